// Verify every axiom of a catalog instance and print the report.
//
//   ./demo_verify sweedler
//   ./demo_verify fun:S3

#include <iostream>

#include "aqg/aqg.hpp"

int main(int argc, char** argv) {
  using namespace aqg;
  std::string name = argc > 1 ? argv[1] : "sweedler";
  auto H = resolve_instance(name);
  HopfMaps hm = hopf_maps(H);
  Report rep = verify_laws(H, "all", Window{3}, &hm);
  std::cout << report_text(rep);
  return rep.all_pass() ? 0 : 1;
}
