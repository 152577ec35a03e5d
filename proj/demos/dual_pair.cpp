// Build the dual of the function algebra of a finite group and print its
// convolution table; the result is the group algebra in Fourier coordinates.

#include <iostream>

#include "aqg/aqg.hpp"

int main(int argc, char** argv) {
  using namespace aqg;
  std::string g = argc > 1 ? argv[1] : "Z3";
  auto H = function_algebra(make_group(g));
  HopfMaps hm = hopf_maps(H);
  ModularData M = compute_modular(H, hm);
  QuantumGroupData D = build_dual(H, hm, M);

  auto lbl = H.basis->labeler();
  for (BasisIndex a : H.basis->window(0))
    for (BasisIndex b : H.basis->window(0))
      std::cout << "F_l(d_" << lbl(a) << ") * F_l(d_" << lbl(b) << ") = "
                << D.mu.rule2(a, b).to_string([&](BasisIndex c) {
                     return "F_l(d_" + lbl(c) + ")";
                   })
                << "\n";
  auto rep = verify_laws(D, "all", Window{3});
  std::cout << (rep.all_pass() ? "dual passes all laws\n" : report_text(rep));
  return rep.all_pass() ? 0 : 1;
}
