// qg: command-line front end for the quantum group workbench.
//
// Subcommands: list, verify, derive, modular, dual, pontrjagin, pair,
// modcomod, export. Exit code 0 when all requested checks pass, 1 on a law
// failure (counterexamples included in the report), 2 on usage errors.
// QG_THREADS bounds the internal sweep worker count.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aqg/aqg.hpp"

namespace {

using namespace aqg;

struct CommonOpts {
  std::string instance;
  std::string file;
  int radius = 3;
  std::string suite = "all";
  std::string format = "text";
  std::string output;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_suite = false) {
  cmd->add_option("--instance", o.instance, "catalog instance spec (see `qg list`)");
  cmd->add_option("--file", o.file, "custom instance file (json schema)");
  cmd->add_option("--radius", o.radius, "window radius (default 3)")
      ->check(CLI::NonNegativeNumber);
  if (with_suite)
    cmd->add_option("--suite", o.suite, "law suite: algebra | galois | hopf | all")
        ->check(CLI::IsMember({"algebra", "galois", "hopf", "all"}));
  cmd->add_option("--format", o.format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", o.output, "write the report to this path");
  cmd->add_flag("--timing", o.timing, "include timing_ms in json output");
}

// Resolve the instance; throws Error for unknown names, returns nullopt when
// a custom file fails its automatic law check (the report explains why).
std::optional<QuantumGroupData> resolve(const CommonOpts& o, Report* load_report,
                                        std::vector<std::string>* load_errors) {
  if (!o.file.empty()) {
    LoadResult res = load_custom_file(o.file, o.radius);
    if (load_report) *load_report = res.report;
    if (load_errors) *load_errors = res.errors;
    if (!res.ok) return std::nullopt;
    return std::move(res.data);
  }
  if (o.instance.empty()) throw Error("one of --instance or --file is required");
  return resolve_instance(o.instance);
}

int emit(const Report& rep, const CommonOpts& o, const std::string& name, long ms) {
  std::string out;
  if (o.format == "json") {
    auto j = report_json(rep, name, o.radius,
                         o.timing ? std::optional<long>(ms) : std::nullopt);
    out = j.dump(2) + "\n";
  } else {
    out = report_text(rep);
  }
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) {
      std::cerr << "cannot write '" << o.output << "'\n";
      return 2;
    }
    f << out;
  } else {
    std::cout << out;
  }
  return rep.all_pass() ? 0 : 1;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// Comparison of derived Hopf maps against the instance closed forms, plus
// re-derivation with a second normalizing element.
Report derive_report(const QuantumGroupData& H, int radius) {
  Report rep;
  auto win = H.basis->window(radius);
  auto lbl = H.basis->labeler();
  Functional eps = derive_counit(H, radius);
  auto [S, S_inv] = derive_antipode(H, eps, radius);

  if (H.crosscheck.eps) {
    CheckResult c{"derive.counit-matches-closed-form", "derived eps = instance eps", true, ""};
    for (BasisIndex b : win) {
      if (!(eps(b) == (*H.crosscheck.eps)(b))) {
        c.pass = false;
        c.counterexample = lbl(b) + ": derived = " + eps(b).to_string() + ", closed form = " +
                           (*H.crosscheck.eps)(b).to_string();
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  }
  if (H.crosscheck.S) {
    CheckResult c{"derive.antipode-matches-closed-form", "derived S = instance S", true, ""};
    for (BasisIndex b : win) {
      if (S.rule1(b) != H.crosscheck.S->rule1(b)) {
        c.pass = false;
        c.counterexample = lbl(b) + ": derived = " + S.rule1(b).to_string(lbl) +
                           ", closed form = " + H.crosscheck.S->rule1(b).to_string(lbl);
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  }
  {
    // uniqueness: a second normalizing element yields the same maps
    Functional eps2 = derive_counit(H, radius, 1);
    CheckResult c{"derive.counit-witness-independent",
                  "re-derivation with a second normalizing element agrees", true, ""};
    for (BasisIndex b : win) {
      if (!(eps(b) == eps2(b))) {
        c.pass = false;
        c.counterexample = lbl(b) + ": first = " + eps(b).to_string() + ", second = " +
                           eps2(b).to_string();
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  }
  {
    HopfMaps hm{eps, S, S_inv};
    Report laws = verify_laws(H, "hopf", Window{radius}, &hm);
    rep.append(std::move(laws));
  }
  return rep;
}

Report modcomod_report(const QuantumGroupData& H, const HopfMaps& hm, int radius) {
  Report rep;
  auto prefix = [&](Report r, const std::string& p) {
    for (auto& c : r.checks) c.id = p + "." + c.id;
    rep.append(std::move(r));
  };
  auto rm = regular_module(H);
  prefix(verify_module(H, rm, Window{radius}), "regular-module");
  auto tm = trivial_module(H, hm.eps, radius);
  prefix(verify_module(H, tm, Window{radius}), "trivial-module");
  auto rc = regular_comodule(H);
  prefix(verify_comodule(H, rc, Window{radius}), "regular-comodule");
  auto tc = trivial_comodule(H, tm.carrier);
  prefix(verify_comodule(H, tc, Window{radius}), "trivial-comodule");
  if (H.finite()) {
    auto M = compute_modular(H, hm, radius);
    auto dd = build_double_dual(H, hm, M, radius);
    auto dm = dualize_comodule(H, dd.dual, rc, radius);
    prefix(verify_module(dd.dual, dm, Window{radius}), "dual-of-regular-comodule");
    auto dc = dualize_module(H, dd.dual, rm);
    prefix(verify_comodule(dd.dual, dc, Window{radius}), "dual-of-regular-module");
    rep.append(roundtrip_module(H, dd, rm, Window{radius}));
    rep.append(roundtrip_comodule(H, dd, rc, Window{radius}));
    if (H.unit) rep.append(tensor_compat_check(H, dd.dual, rm, rm, Window{radius}));
  }
  return rep;
}

Report pair_report(const QuantumGroupData& H, const ModularData& M, int radius) {
  Report rep;
  const FieldCtx* F = H.field;
  auto win = H.basis->window(radius);
  auto lbl = H.basis->labeler();
  {
    CheckResult c{"pair.bilinear", "<f, F_l(c)> is bilinear on window combinations", true, ""};
    // spot check: <f + g, w> = <f, w> + <g, w> on the first few window triples
    std::size_t n = std::min<std::size_t>(win.size(), 6);
    for (std::size_t i = 0; i < n && c.pass; ++i)
      for (std::size_t j = 0; j < n && c.pass; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Vec f = vec_unit(win[i], F), g = vec_unit(win[j], F);
          DualElement w{vec_unit(win[k], F), H.name};
          Scalar lhs = pair_eval(H, w, f + g);
          Scalar rhs = pair_eval(H, w, f) + pair_eval(H, w, g);
          if (!(lhs == rhs)) {
            c.pass = false;
            c.counterexample = "(" + lbl(win[i]) + ", " + lbl(win[j]) + ", " + lbl(win[k]) + ")";
            break;
          }
        }
    rep.checks.push_back(std::move(c));
  }
  {
    // fourier pictures agree with their defining evaluations
    CheckResult c{"prop7.fourier-conversions",
                  "F_r, G_l, G_r in F_l coordinates match their defining formulas", true, ""};
    for (BasisIndex f : win) {
      Vec vf = vec_unit(f, F);
      for (BasisIndex hN : win) {
        Vec vh = vec_unit(hN, F);
        Scalar fr = pair_eval(H, fourier(H, M, vf, FourierMap::Fr), vh);
        Scalar fr_def = H.phi.eval(H.product(vf, vh));
        Scalar gl = pair_eval(H, fourier(H, M, vf, FourierMap::Gl), vh);
        Scalar gl_def = M.psi.eval(H.product(vh, vf));
        Scalar gr = pair_eval(H, fourier(H, M, vf, FourierMap::Gr), vh);
        Scalar gr_def = M.psi.eval(H.product(vf, vh));
        if (!(fr == fr_def) || !(gl == gl_def) || !(gr == gr_def)) {
          c.pass = false;
          c.counterexample = "(" + lbl(f) + ", " + lbl(hN) + ")";
          break;
        }
      }
      if (!c.pass) break;
    }
    rep.checks.push_back(std::move(c));
  }
  if (H.finite()) {
    auto full = H.basis->window(0);
    std::size_t n = full.size();
    Mat gram = mat_zero(n, n, F);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        gram[i][j] = H.phi.eval(H.mu.rule2(full[i], full[j]));
    bool ok = rank(gram) == n;
    rep.checks.push_back({"prop7.pairing-nondegenerate",
                          "zero pairing against the window basis implies zero", ok,
                          ok ? "" : "pairing matrix singular"});
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qg, an exact workbench for algebraic quantum groups"};
  app.require_subcommand(1);

  CommonOpts o;
  auto* c_list = app.add_subcommand("list", "list catalog instances");
  auto* c_verify = app.add_subcommand("verify", "run law suites on an instance");
  add_common(c_verify, o, true);
  auto* c_derive = app.add_subcommand("derive", "derive counit/antipode and cross-check");
  add_common(c_derive, o);
  auto* c_modular = app.add_subcommand("modular", "modular data: psi, nu, sigma, delta");
  add_common(c_modular, o);
  auto* c_dual = app.add_subcommand("dual", "build the dual and verify it");
  add_common(c_dual, o);
  auto* c_pont = app.add_subcommand("pontrjagin", "double dual comparison");
  add_common(c_pont, o);
  auto* c_pair = app.add_subcommand("pair", "pairing between H and its dual");
  add_common(c_pair, o);
  auto* c_mc = app.add_subcommand("modcomod", "module/comodule suites and round trips");
  add_common(c_mc, o);
  auto* c_export = app.add_subcommand("export", "dump the instance file schema");
  add_common(c_export, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_list->parsed()) {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
      return 0;
    }

    auto t0 = std::chrono::steady_clock::now();
    Report load_report;
    std::vector<std::string> load_errors;
    auto Hopt = resolve(o, &load_report, &load_errors);
    if (!Hopt) {
      // custom file failed: parse errors exit 2, law failures exit 1
      for (const auto& e : load_errors) std::cerr << e << "\n";
      if (!load_report.checks.empty()) {
        int rc = emit(load_report, o, o.file, elapsed_ms(t0));
        return rc == 0 ? 1 : rc;
      }
      return 2;
    }
    QuantumGroupData H = std::move(*Hopt);
    std::string name = H.name;

    if (c_verify->parsed()) {
      Report rep;
      if (o.suite == "all" || o.suite == "hopf") {
        HopfMaps hm = hopf_maps(H, o.radius);
        rep = verify_laws(H, o.suite, Window{o.radius}, &hm);
      } else {
        rep = verify_laws(H, o.suite, Window{o.radius});
      }
      return emit(rep, o, name, elapsed_ms(t0));
    }
    if (c_derive->parsed()) return emit(derive_report(H, o.radius), o, name, elapsed_ms(t0));
    if (c_modular->parsed()) {
      HopfMaps hm = hopf_maps(H, o.radius);
      ModularData M = compute_modular(H, hm, o.radius);
      return emit(verify_modular(H, hm, M, Window{o.radius}), o, name, elapsed_ms(t0));
    }
    if (c_dual->parsed()) {
      HopfMaps hm = hopf_maps(H, o.radius);
      ModularData M = compute_modular(H, hm, o.radius);
      QuantumGroupData D = build_dual(H, hm, M);
      Report rep = verify_laws(D, "all", Window{o.radius});
      for (auto& c : rep.checks) c.id = "dual." + c.id;
      rep.append(verify_dual(H, hm, M, D, Window{o.radius}));
      // catalog pairs: compare against the partner instance
      if (name.rfind("fun:", 0) == 0 && H.finite()) {
        auto partner = resolve_instance("grp:" + name.substr(4));
        std::string why;
        bool ok = dual_matches(D, partner, [](BasisIndex b) { return b; }, o.radius, &why);
        rep.checks.push_back({"dual.structure-match", "dual structure constants match " +
                                                          partner.name,
                              ok, ok ? "" : why});
      } else if (name.rfind("grp:", 0) == 0 && H.finite()) {
        auto partner = resolve_instance("fun:" + name.substr(4));
        auto grp = make_group(name.substr(4));
        std::string why;
        bool ok = dual_matches(
            D, partner, [grp](BasisIndex b) { return grp->invert(b); }, o.radius, &why);
        rep.checks.push_back({"dual.structure-match",
                              "dual structure constants match " + partner.name +
                                  " under the inverse relabeling",
                              ok, ok ? "" : why});
      }
      return emit(rep, o, name, elapsed_ms(t0));
    }
    if (c_pont->parsed()) {
      HopfMaps hm = hopf_maps(H, o.radius);
      ModularData M = compute_modular(H, hm, o.radius);
      return emit(pontrjagin_check(H, hm, M, Window{o.radius}), o, name, elapsed_ms(t0));
    }
    if (c_pair->parsed()) {
      HopfMaps hm = hopf_maps(H, o.radius);
      ModularData M = compute_modular(H, hm, o.radius);
      return emit(pair_report(H, M, o.radius), o, name, elapsed_ms(t0));
    }
    if (c_mc->parsed()) {
      HopfMaps hm = hopf_maps(H, o.radius);
      return emit(modcomod_report(H, hm, o.radius), o, name, elapsed_ms(t0));
    }
    if (c_export->parsed()) {
      auto j = export_instance(H, o.radius);
      std::string out = j.dump(2) + "\n";
      if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f) {
          std::cerr << "cannot write '" << o.output << "'\n";
          return 2;
        }
        f << out;
      } else {
        std::cout << out;
      }
      return 0;
    }
  } catch (const aqg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
