// Acceptance suite: one pass/fail line per criterion, exact arithmetic, zero
// tolerance. Exits with the number of failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aqg/aqg.hpp"

using namespace aqg;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void line(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what;
  if (!pass && !detail.empty()) std::cout << ": " << detail;
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

struct InstanceSpec {
  std::string name;
  int radius;
};

const std::vector<InstanceSpec>& catalog() {
  static std::vector<InstanceSpec> v = {
      {"fun:Z2", 3},    {"fun:Z3", 3},    {"fun:Z4", 3},  {"fun:Z2xZ2", 3},
      {"fun:S3", 3},    {"grp:Z2", 3},    {"grp:Z3", 3},  {"grp:Z4", 3},
      {"grp:Z2xZ2", 3}, {"grp:S3", 3},    {"fun:Z", 4},   {"grp:Z", 4},
      {"fun:F2", 4},    {"grp:F2", 4},    {"sweedler", 3}, {"taft:3", 3}};
  return v;
}

std::string first_failure(const Report& rep) {
  for (const auto& c : rep.checks)
    if (!c.pass) return c.id + ": " + c.counterexample;
  return "";
}

}  // namespace

// 1. verify_laws(all) passes for every catalog instance, < 30 s total.
static void criterion1() {
  auto t0 = Clock::now();
  bool all_ok = true;
  std::string detail;
  for (const auto& spec : catalog()) {
    auto H = resolve_instance(spec.name);
    HopfMaps hm = hopf_maps(H, spec.radius);
    Report rep = verify_laws(H, "all", Window{spec.radius}, &hm);
    if (!rep.all_pass()) {
      all_ok = false;
      detail = spec.name + " " + first_failure(rep);
      break;
    }
  }
  long secs = std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - t0).count();
  bool in_time = secs < 30;
  if (!in_time && detail.empty()) detail = "runtime " + std::to_string(secs) + " s";
  line(1, "axiom suites pass for every catalog instance in under 30 s (took " +
              std::to_string(secs) + " s)",
       all_ok && in_time, detail);
}

// 2. Derivations match the closed forms pointwise; second witness agrees.
static void criterion2() {
  bool ok = true;
  std::string detail;
  for (const auto& spec : catalog()) {
    auto H = resolve_instance(spec.name);
    auto win = H.basis->window(spec.radius);
    Functional eps = derive_counit(H, spec.radius);
    auto [S, S_inv] = derive_antipode(H, eps, spec.radius);
    Functional eps2 = derive_counit(H, spec.radius, 1);
    for (BasisIndex b : win) {
      if (H.crosscheck.eps && !(eps(b) == (*H.crosscheck.eps)(b))) {
        ok = false;
        detail = spec.name + ": counit differs from closed form at " + H.label(b);
        break;
      }
      if (H.crosscheck.S && S.rule1(b) != H.crosscheck.S->rule1(b)) {
        ok = false;
        detail = spec.name + ": antipode differs from closed form at " + H.label(b);
        break;
      }
      if (!(eps(b) == eps2(b))) {
        ok = false;
        detail = spec.name + ": second normalizing element changes the counit at " +
                 H.label(b);
        break;
      }
    }
    if (!ok) break;
  }
  line(2, "derived counit/antipode match closed forms; re-derivation with a second "
          "normalizing element is identical",
       ok, detail);
}

// 3. Modular suite: Sweedler specifics, trivial modular data on group
// instances, one-dimensional invariant space on finite instances.
static void criterion3() {
  bool ok = true;
  std::string detail;
  {
    auto H = sweedler();
    const FieldCtx* F = H.field;
    HopfMaps hm = hopf_maps(H);
    ModularData M = compute_modular(H, hm, 3);
    BasisIndex g = 1, x = 2;
    if (!M.delta_elem || !(*M.delta_elem == vec_unit(g, F))) {
      ok = false;
      detail = "sweedler delta != g";
    }
    // psi = phi S is the dual functional of x up to the sign forced by
    // S(x) = -gx (right Haar uniqueness is up to a scalar)
    if (ok && !(M.psi(x) == Scalar::of_int(F, -1) && M.psi(0).is_zero() &&
                M.psi(1).is_zero() && M.psi(3).is_zero())) {
      ok = false;
      detail = "sweedler psi is not supported on x";
    }
    if (ok && apply(hm.S, hm.S.rule1(x)) != Tensor::unit({x}, Scalar::of_int(F, -1))) {
      ok = false;
      detail = "sweedler S^2(x) != -x";
    }
    if (ok) {
      for (BasisIndex b : H.basis->window(0)) {
        Vec lhs = apply(hm.S, apply(hm.S, M.sigma.rule1(b)));
        Vec rhs = apply(M.sigma, apply(hm.S, hm.S.rule1(b)));
        if (lhs != rhs) {
          ok = false;
          detail = "sweedler S^2 sigma != sigma S^2";
          break;
        }
      }
    }
    if (ok) {
      Report rep = verify_modular(H, hm, M, Window{3});
      bool grouplike = false;
      for (const auto& c : rep.checks)
        if (c.id == "prop5.delta-grouplike") grouplike = c.pass;
      if (!rep.all_pass() || !grouplike) {
        ok = false;
        detail = "sweedler modular suite: " + first_failure(rep);
      }
    }
  }
  if (ok) {
    for (const auto& spec : catalog()) {
      if (spec.name.rfind("fun:", 0) != 0 && spec.name.rfind("grp:", 0) != 0) continue;
      auto H = resolve_instance(spec.name);
      const FieldCtx* F = H.field;
      HopfMaps hm = hopf_maps(H, spec.radius);
      ModularData M = compute_modular(H, hm, spec.radius);
      for (BasisIndex b : H.basis->window(std::min(spec.radius, 2))) {
        Vec fb = vec_unit(b, F);
        if (M.delta.L(fb) != fb || M.sigma.rule1(b) != fb || M.nu.rule1(b) != fb) {
          ok = false;
          detail = spec.name + ": modular data not trivial at " + H.label(b);
          break;
        }
      }
      if (!ok) break;
    }
  }
  if (ok) {
    for (const auto& spec : catalog()) {
      auto H = resolve_instance(spec.name);
      if (!H.finite()) continue;
      if (invariant_space_dim(H) != 1) {
        ok = false;
        detail = spec.name + ": invariant functional space not one-dimensional";
        break;
      }
    }
  }
  line(3, "modular suite (sweedler: delta = g, psi on x, S^2(x) = -x, S^2 sigma = "
          "sigma S^2, group-like delta; group instances trivial; invariant space "
          "dimension 1)",
       ok, detail);
}

// 4. Duality: structure match both ways, dual Haar identities, pentagon.
static void criterion4() {
  bool ok = true;
  std::string detail;
  for (std::string g : {"Z2", "Z3", "Z4", "Z2xZ2", "S3"}) {
    auto fun = resolve_instance("fun:" + g);
    HopfMaps hmf = hopf_maps(fun);
    ModularData Mf = compute_modular(fun, hmf, 3);
    QuantumGroupData Df = build_dual(fun, hmf, Mf);
    auto grp = resolve_instance("grp:" + g);
    std::string why;
    if (!dual_matches(Df, grp, [](BasisIndex b) { return b; }, 3, &why)) {
      ok = false;
      detail = "dual(fun:" + g + ") vs grp:" + g + ": " + why;
      break;
    }
    HopfMaps hmg = hopf_maps(grp);
    ModularData Mg = compute_modular(grp, hmg, 3);
    QuantumGroupData Dg = build_dual(grp, hmg, Mg);
    auto model = make_group(g);
    if (!dual_matches(Dg, fun, [model](BasisIndex b) { return model->invert(b); }, 3,
                      &why)) {
      ok = false;
      detail = "dual(grp:" + g + ") vs fun:" + g + ": " + why;
      break;
    }
    // dual Haar identities on the full bases
    const FieldCtx* F = fun.field;
    for (BasisIndex b : fun.basis->window(0)) {
      // psihat(F_l(f)) = eps(f): right invariance of eps-coordinates
      for (BasisIndex c : fun.basis->window(0)) {
        Tensor lhs = leg_functional(hmf.eps, 1, Df.gamma_r.rule2(b, c));
        Tensor rhs = Tensor::unit({c}, hmf.eps(b));
        if (lhs != rhs) {
          ok = false;
          detail = "psihat not right invariant on dual(fun:" + g + ")";
          break;
        }
      }
      if (!ok) break;
      // epshat(F_l(f)) = phi(f)
      if (!((*Df.crosscheck.eps)(b) == fun.phi(b))) {
        ok = false;
        detail = "epshat(F_l(f)) != phi(f) on dual(fun:" + g + ")";
        break;
      }
    }
    if (!ok) break;
    // pentagon for the dual gammarhat
    Report grep = verify_laws(Df, "galois", Window{3});
    for (const auto& c : grep.checks)
      if (c.id == "prop7.pentagon" && !c.pass) {
        ok = false;
        detail = "pentagon fails for gammarhat of dual(fun:" + g + ")";
      }
    if (!ok) break;
  }
  line(4, "build_dual matches the partner instance under F_l relabeling both ways; "
          "dual Haar identities and the dual pentagon hold",
       ok, detail);
}

// 5. Pontrjagin double duals.
static void criterion5() {
  bool ok = true;
  std::string detail;
  for (std::string nm : {"fun:Z2", "grp:Z2", "fun:Z3", "sweedler"}) {
    auto H = resolve_instance(nm);
    HopfMaps hm = hopf_maps(H);
    ModularData M = compute_modular(H, hm, 3);
    Report rep = pontrjagin_check(H, hm, M, Window{3});
    if (!rep.all_pass()) {
      ok = false;
      detail = nm + " " + first_failure(rep);
      break;
    }
  }
  line(5, "pontrjagin_check passes (double-dual structure match and the three "
          "P-formulas agree) for fun:Z2, grp:Z2, fun:Z3, sweedler",
       ok, detail);
}

// 6. Module/comodule duality round trips and tensor compatibility.
static void criterion6() {
  bool ok = true;
  std::string detail;
  for (std::string nm : {"fun:Z2", "grp:Z2"}) {
    auto H = resolve_instance(nm);
    const FieldCtx* F = H.field;
    HopfMaps hm = hopf_maps(H);
    ModularData M = compute_modular(H, hm, 3);
    DoubleDual dd = build_double_dual(H, hm, M, 3);

    auto rm = regular_module(H);
    auto rc = regular_comodule(H);

    // 2-dimensional non-regular module
    auto carrier = std::make_shared<ListBasisModel>(std::vector<std::string>{"v0", "v1"});
    ModuleData m2;
    if (nm == "fun:Z2") {
      m2 = ModuleData{carrier,
                      BasisRuleOperator::binary11(
                          [F](BasisIndex s, BasisIndex v) {
                            return s == v ? vec_unit(v, F) : Vec(1);
                          },
                          "eval"),
                      BasisRuleOperator(
                          1, 2,
                          [F](std::span<const BasisIndex> ids) {
                            return outer(vec_unit(ids[0], F), vec_unit(ids[0], F));
                          },
                          "sec"),
                      "eval-module"};
    } else {
      m2 = ModuleData{carrier,
                      BasisRuleOperator::binary11(
                          [F](BasisIndex s, BasisIndex v) {
                            Scalar c = (s == 1 && v == 1) ? Scalar::of_int(F, -1)
                                                          : Scalar::one(F);
                            return Tensor::unit({v}, c);
                          },
                          "char"),
                      BasisRuleOperator(
                          1, 2,
                          [F](std::span<const BasisIndex> ids) {
                            return outer(vec_unit(0, F), vec_unit(ids[0], F));
                          },
                          "sec"),
                      "char-module"};
    }

    for (const Report& rep :
         {verify_module(H, rm, Window{3}), verify_comodule(H, rc, Window{3}),
          verify_module(H, m2, Window{3}), roundtrip_module(H, dd, rm, Window{3}),
          roundtrip_comodule(H, dd, rc, Window{3}), roundtrip_module(H, dd, m2, Window{3}),
          tensor_compat_check(H, dd.dual, rm, m2, Window{3})}) {
      if (!rep.all_pass()) {
        ok = false;
        detail = nm + " " + first_failure(rep);
        break;
      }
    }
    if (!ok) break;
  }
  line(6, "module/comodule round trips through the double dual and tensor "
          "compatibility of D for fun:Z2 and grp:Z2 (regular and 2-dim non-regular)",
       ok, detail);
}

// 7. Morphism duality for the quotient Z -> Z2 and the identity.
static void criterion7() {
  bool ok = true;
  std::string detail;
  {
    auto Hz = resolve_instance("grp:Z");
    auto K2 = resolve_instance("grp:Z2");
    const FieldCtx* F = Hz.field;
    auto zb = Hz.basis;
    Morphism q{Hz, K2,
               BasisRuleOperator::unary(
                   [zb, F](BasisIndex n) {
                     long v = std::stol(zb->label(n));
                     return vec_unit(static_cast<BasisIndex>(((v % 2) + 2) % 2), F);
                   },
                   "quot"),
               BasisRuleOperator(
                   1, 2,
                   [zb, F](std::span<const BasisIndex> ids) {
                     auto zn = zb->parse(std::to_string(ids[0]));
                     return outer(vec_unit(*zn, F), vec_unit(0, F));
                   },
                   "quot-section"),
               "quotient"};
    HopfMaps hmH = hopf_maps(Hz, 3);
    HopfMaps hmK = hopf_maps(K2, 3);
    Report laws = verify_morphism(q, hmH, hmK, Window{3});
    ModularData MK = compute_modular(K2, hmK, 3);
    QuantumGroupData DK = build_dual(K2, hmK, MK);
    Report dual = dual_morphism_check(q, DK, Window{3});
    bool prop4 = false, adj = false;
    for (const auto& c : laws.checks)
      if (c.id == "prop4.counit-compatible" || c.id == "prop4.antipode-compatible")
        prop4 = c.pass;
    for (const auto& c : dual.checks)
      if (c.id == "prop8.adjoint") adj = c.pass;
    if (!laws.all_pass() || !dual.all_pass() || !prop4 || !adj) {
      ok = false;
      detail = "quotient morphism: " + first_failure(laws) + first_failure(dual);
    }
  }
  if (ok) {
    auto H = resolve_instance("grp:Z2");
    const FieldCtx* F = H.field;
    auto lu = H.local_unit;
    Morphism id{H, H, BasisRuleOperator::identity(F),
                BasisRuleOperator(
                    1, 2,
                    [lu, F](std::span<const BasisIndex> ids) {
                      BasisIndex b = ids[0];
                      auto e = lu(std::span<const BasisIndex>(&b, 1));
                      return outer(*e, vec_unit(b, F));
                    },
                    "id-section"),
                "identity"};
    HopfMaps hm = hopf_maps(H, 3);
    Report laws = verify_morphism(id, hm, hm, Window{3});
    ModularData M = compute_modular(H, hm, 3);
    QuantumGroupData D = build_dual(H, hm, M);
    Report dual = dual_morphism_check(id, D, Window{3});
    if (!laws.all_pass() || !dual.all_pass()) {
      ok = false;
      detail = "identity morphism: " + first_failure(laws) + first_failure(dual);
    }
  }
  line(7, "adjoint relation and comultiplication compatibility of the dual morphism "
          "for the quotient Z -> Z2 and the identity; counit/antipode compatibility "
          "holds automatically",
       ok, detail);
}

// 8. Negative tests: three mutations each produce a named failure with a
// counterexample; the CLI exits 1 on a broken file.
static void criterion8() {
  bool ok = true;
  std::string detail;
  {
    auto H = resolve_instance("fun:Z2");
    const FieldCtx* F = H.field;
    auto orig = H.mu;
    H.mu = BasisRuleOperator::binary11(
        [orig, F](BasisIndex a, BasisIndex b) -> Vec {
          if (a == 1 && b == 0) return vec_unit(1, F);
          return orig.rule2(a, b);
        },
        "mu");
    Report rep = verify_laws(H, "algebra", Window{3});
    bool named = false;
    for (const auto& c : rep.checks)
      if (c.id == "def.mu-associative" && !c.pass && !c.counterexample.empty()) named = true;
    if (!named) {
      ok = false;
      detail = "non-associative mu not caught";
    }
  }
  if (ok) {
    auto H = resolve_instance("grp:Z2");
    const FieldCtx* F = H.field;
    H.gamma_r = BasisRuleOperator::binary22(
        [F](BasisIndex a, BasisIndex b) { return t2_unit(a, b, F); }, "gamma_r");
    Report rep = verify_laws(H, "galois", Window{3});
    bool named = false;
    for (const auto& c : rep.checks)
      if (!c.pass && !c.counterexample.empty()) named = true;
    if (!named) {
      ok = false;
      detail = "identity gamma_r not caught";
    }
  }
  if (ok) {
    auto H = resolve_instance("fun:Z2");
    HopfMaps hm = derive_hopf(H, 3);
    const FieldCtx* F = H.field;
    Functional bad{F,
                   [rule = hm.eps.rule, F](BasisIndex b) {
                     Scalar v = rule(b);
                     if (b == 1) v += Scalar::one(F);
                     return v;
                   },
                   "eps'"};
    HopfMaps mut{bad, hm.S, hm.S_inv};
    Report rep = verify_laws(H, "hopf", Window{3}, &mut);
    bool named = false;
    for (const auto& c : rep.checks)
      if (!c.pass && !c.counterexample.empty()) named = true;
    if (!named) {
      ok = false;
      detail = "perturbed counit not caught";
    }
  }
  if (ok) {
    // broken file through the CLI: exit code must be 1
    std::string path = "/tmp/aqg_acceptance_broken.qg";
    {
      std::ofstream f(path);
      f << R"JSON({
        "field": {"conductor": 1},
        "basis": ["e", "a"],
        "mu": [[0, 0, [[0, "1"]]], [1, 1, [[1, "1"]]], [1, 0, [[1, "1"]]]],
        "galois": {
          "gamma_l": [[0, 0, [[0, 0, "1"]]], [0, 1, [[1, 1, "1"]]],
                       [1, 0, [[0, 1, "1"]]], [1, 1, [[1, 0, "1"]]]],
          "gamma_r": [[0, 0, [[0, 0, "1"]]], [0, 1, [[1, 1, "1"]]],
                       [1, 0, [[1, 0, "1"]]], [1, 1, [[0, 1, "1"]]]],
          "rho_l":   [[0, 0, [[0, 0, "1"]]], [0, 1, [[0, 1, "1"]]],
                       [1, 0, [[1, 1, "1"]]], [1, 1, [[1, 0, "1"]]]],
          "rho_r":   [[0, 0, [[0, 0, "1"]]], [0, 1, [[1, 0, "1"]]],
                       [1, 0, [[1, 1, "1"]]], [1, 1, [[0, 1, "1"]]]]
        },
        "phi": [[0, "1"], [1, "1"]]
      })JSON";
    }
    std::string cmd = std::string(QG_CLI_PATH) + " verify --file " + path + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 1) {
      ok = false;
      detail = "CLI exit code on broken file was " + std::to_string(code);
    }
  }
  line(8, "mutated instances each produce a named law failure with a counterexample; "
          "broken files exit 1 through the CLI",
       ok, detail);
}

// 9. Export/load round trip for every finite-dimensional catalog instance.
static void criterion9() {
  bool ok = true;
  std::string detail;
  std::vector<std::string> names = {"fun:Z2", "fun:Z3",    "fun:Z4", "fun:Z2xZ2",
                                    "fun:S3", "grp:Z2",    "grp:Z3", "grp:Z4",
                                    "grp:Z2xZ2", "grp:S3", "sweedler", "taft:3",
                                    "trivial"};
  for (const auto& nm : names) {
    auto H = resolve_instance(nm);
    auto j = export_instance(H, 3);
    LoadResult res = load_custom_json(j, 3);
    if (!res.ok) {
      ok = false;
      detail = nm + ": reload failed (" + (res.errors.empty() ? "?" : res.errors.front()) + ")";
      break;
    }
    std::string why;
    if (!roundtrip_equal(H, *res.data, 3, &why)) {
      ok = false;
      detail = nm + ": " + why;
      break;
    }
  }
  line(9, "export -> load_custom reproduces structure constants exactly for every "
          "finite-dimensional catalog instance",
       ok, detail);
}

int main() {
  auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  long secs = std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - t0).count();
  std::cout << g_failures << " of 9 criteria failed (" << secs << " s total)" << std::endl;
  return g_failures;
}
