#pragma once

// Constructive derivation of the counit and antipode from the instance data,
// the op/cop/opcop variants, and multiplier checks.
//
// The counit comes from eps(f) = phi(mu rho_l^{-1}(h (x) f)) for any h with
// phi(h) = 1. The antipode is resolved to an element through a local unit e:
// the left-multiplier and right-multiplier routes
//
//   e * S_r(f) = (id (x) eps) rho_l^{-1}(e (x) f)
//   S_l(f) * e = (eps (x) id) gamma_r^{-1}(f (x) e)
//
// must coincide; a mismatch means the antipode escapes the window and is
// reported as an error. Non-unital finite-dimensional instances fall back to
// an exact linear solve.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqg/linalg.hpp"
#include "aqg/qgdata.hpp"

namespace aqg {

// Window closure that also covers the given indices (for group models, the
// ball of the largest word length among them).
inline std::vector<BasisIndex> window_containing(const QuantumGroupData& H,
                                                 std::span<const BasisIndex> ids,
                                                 int radius) {
  if (H.finite()) return H.basis->window(radius);
  if (auto* gb = dynamic_cast<const GroupBasisModel*>(H.basis.get())) {
    int r = radius;
    for (BasisIndex b : ids) r = std::max(r, static_cast<int>(gb->group().word_length(b)));
    return H.basis->window(r);
  }
  auto w = H.basis->window(radius);
  for (BasisIndex b : ids)
    if (std::find(w.begin(), w.end(), b) == w.end()) w.push_back(b);
  return w;
}

// First basis element in enumeration order with phi != 0, scaled to phi = 1.
inline Vec haar_witness(const QuantumGroupData& H, int radius, int skip = 0) {
  auto win = H.basis->window(radius);
  BasisIndex first_hit = 0;
  bool have_first = false;
  for (BasisIndex b : win) {
    Scalar v = H.phi(b);
    if (v.is_zero()) continue;
    if (skip == 0) return Tensor::unit({b}, v.inverse());
    if (!have_first) {
      first_hit = b;
      have_first = true;
      continue;
    }
    return Tensor::unit({b}, v.inverse());
  }
  if (skip > 0 && have_first) {
    // only one basis witness: perturb it by another basis vector, keeping
    // phi(h) = 1 (h2 = h1 + c - phi(c) h1)
    Scalar inv = H.phi(first_hit).inverse();
    for (BasisIndex c : win) {
      if (c == first_hit) continue;
      Vec h2 = Tensor::unit({first_hit}, inv);
      Scalar pc = H.phi(c);
      h2.add({c}, Scalar::one(H.field));
      h2.add({first_hit}, -(pc * inv));
      h2.normalize();
      return h2;
    }
    // one-dimensional window: the witness is unique
    return Tensor::unit({first_hit}, inv);
  }
  throw Error(H.name + ": no element with phi != 0 found in window");
}

inline Functional derive_counit(const QuantumGroupData& H, int radius = 3, int skip = 0) {
  Vec h = haar_witness(H, radius, skip);
  // capture by value; the rule must stay pure
  auto rho_l_inv = H.rho_l_inv;
  auto mu = H.mu;
  auto phi = H.phi;
  return Functional{
      H.field,
      [h, rho_l_inv, mu, phi](BasisIndex b) {
        Vec f = Tensor::unit({b}, Scalar::one(phi.field));
        return phi.eval(apply(mu, apply(rho_l_inv, outer(h, f))));
      },
      "eps"};
}

namespace detail_derive {

// Antipode of a single basis element via local units, with the two-route
// consistency check.
inline Vec antipode_at(const QuantumGroupData& H, const Functional& eps, BasisIndex b,
                       int radius, bool inverse_antipode) {
  BasisIndex ids[1] = {b};
  auto win = window_containing(H, ids, radius);
  auto e = H.local_unit(win);
  if (!e) throw Error(H.name + ": no local unit available for antipode derivation");
  Vec fb = vec_unit(b, H.field);
  Vec left, right;
  if (!inverse_antipode) {
    left = leg_functional(eps, 2, apply(H.rho_l_inv, outer(*e, fb)));
    right = leg_functional(eps, 1, apply(H.gamma_r_inv, outer(fb, *e)));
  } else {
    left = leg_functional(eps, 2, apply(H.rho_r_inv, outer(fb, *e)));
    right = leg_functional(eps, 1, apply(H.gamma_l_inv, outer(*e, fb)));
  }
  if (left != right)
    throw Error(H.name + ": antipode escapes window at basis element " + H.label(b) +
                " (multiplier routes disagree)");
  return left;
}

// Finite-dimensional fallback: solve mu(g (x) s) and mu(s (x) g) equations.
inline Vec antipode_solve(const QuantumGroupData& H, const Functional& eps, BasisIndex b,
                          bool inverse_antipode) {
  auto full = H.basis->window(0);
  const std::size_t n = full.size();
  Vec fb = vec_unit(b, H.field);

  Mat rows;
  std::vector<Scalar> rhs;
  // unknown s = sum_k s_k e_k; equations: for each g in basis,
  //   sum_k s_k mu(e_g, e_k) = U(g)   and   sum_k s_k mu(e_k, e_g) = T(g)
  // where U(g) = (id(x)eps) rho_l^{-1}(e_g (x) f) (ordinary antipode) etc.
  std::vector<Vec> mu_right(n * n, Vec(1));  // mu(e_g, e_k)
  for (std::size_t gi = 0; gi < n; ++gi)
    for (std::size_t k = 0; k < n; ++k) mu_right[gi * n + k] = H.mu.rule2(full[gi], full[k]);

  auto emit = [&](std::size_t gi, bool right_mult) {
    Vec target;
    Vec fg = vec_unit(full[gi], H.field);
    if (!inverse_antipode) {
      target = right_mult
                   ? leg_functional(eps, 2, apply(H.rho_l_inv, outer(fg, fb)))
                   : leg_functional(eps, 1, apply(H.gamma_r_inv, outer(fb, fg)));
    } else {
      target = right_mult
                   ? leg_functional(eps, 2, apply(H.rho_r_inv, outer(fb, fg)))
                   : leg_functional(eps, 1, apply(H.gamma_l_inv, outer(fg, fb)));
    }
    // coordinates touched by any mu(e_g, e_k) / mu(e_k, e_g) or the target
    std::map<BasisIndex, std::vector<Scalar>> coeff_rows;
    auto row_for = [&](BasisIndex m) -> std::vector<Scalar>& {
      auto& r = coeff_rows[m];
      if (r.empty()) r.assign(n, Scalar::zero(H.field));
      return r;
    };
    for (std::size_t k = 0; k < n; ++k) {
      const Vec& mv = right_mult ? mu_right[gi * n + k] : H.mu.rule2(full[k], full[gi]);
      for (const auto& e : mv.terms()) row_for(e.key[0])[k] += e.coeff;
    }
    std::map<BasisIndex, Scalar> tvals;
    for (const auto& e : target.terms()) {
      tvals[e.key[0]] = e.coeff;
      row_for(e.key[0]);
    }
    for (auto& [m, row] : coeff_rows) {
      rows.push_back(std::move(row));
      auto it = tvals.find(m);
      rhs.push_back(it == tvals.end() ? Scalar::zero(H.field) : it->second);
    }
  };
  for (std::size_t gi = 0; gi < n; ++gi) {
    emit(gi, true);
    emit(gi, false);
  }
  auto sol = solve(rows, rhs, H.field);
  if (!sol)
    throw Error(H.name + ": antipode escapes window at basis element " + H.label(b) +
                " (resolution system infeasible)");
  Vec s(1);
  for (std::size_t k = 0; k < n; ++k)
    if (!(*sol)[k].is_zero()) s.add({full[k]}, (*sol)[k]);
  s.normalize();
  return s;
}

}  // namespace detail_derive

// Returns (S, S^{-1}); verifies the two multiplier routes agree pointwise and
// that the pair inverts on the window.
inline std::pair<BasisRuleOperator, BasisRuleOperator> derive_antipode(
    const QuantumGroupData& H, const Functional& eps, int radius = 3) {
  bool via_unit = static_cast<bool>(H.local_unit);
  if (!via_unit && !H.finite())
    throw Error(H.name + ": antipode derivation needs a local unit or finite basis");

  auto Hc = H;  // cheap copy of rule handles for capture
  auto make = [Hc, eps, radius, via_unit](bool inverse_antipode, std::string nm) {
    return BasisRuleOperator::unary(
        [Hc, eps, radius, via_unit, inverse_antipode](BasisIndex b) {
          return via_unit
                     ? detail_derive::antipode_at(Hc, eps, b, radius, inverse_antipode)
                     : detail_derive::antipode_solve(Hc, eps, b, inverse_antipode);
        },
        std::move(nm));
  };
  BasisRuleOperator S = make(false, "S");
  BasisRuleOperator S_inv = make(true, "S_inv");

  for (BasisIndex b : H.basis->window(radius)) {
    Vec fb = vec_unit(b, H.field);
    if (apply(S_inv, apply(S, fb)) != fb || apply(S, apply(S_inv, fb)) != fb)
      throw Error(H.name + ": derived antipode not invertible at " + H.label(b));
  }
  return {std::move(S), std::move(S_inv)};
}

inline HopfMaps derive_hopf(const QuantumGroupData& H, int radius = 3) {
  Functional eps = derive_counit(H, radius);
  auto [S, S_inv] = derive_antipode(H, eps, radius);
  return HopfMaps{std::move(eps), std::move(S), std::move(S_inv)};
}

// Hopf maps from closed-form cross-check data when present, else derived.
inline HopfMaps hopf_maps(const QuantumGroupData& H, int radius = 3, bool prefer_derived = false) {
  if (!prefer_derived && H.crosscheck.eps && H.crosscheck.S && H.crosscheck.S_inv)
    return HopfMaps{*H.crosscheck.eps, *H.crosscheck.S, *H.crosscheck.S_inv};
  return derive_hopf(H, radius);
}

enum class Variant { op, cop, opcop };

inline std::string variant_suffix(Variant v) {
  switch (v) {
    case Variant::op: return "^op";
    case Variant::cop: return "^cop";
    case Variant::opcop: return "^opcop";
  }
  return "";
}

// The op/cop/opcop bundle, with Galois maps transformed by the flip-map
// table. The left Haar functional is phi for H^op and phi.S for H^cop and
// H^opcop (a right invariant functional of H). transport_haar = false skips
// the Haar change (for callers that only use the variant's maps).
inline QuantumGroupData opposite_variant(const QuantumGroupData& H, Variant v,
                                         const BasisRuleOperator* S_for_haar = nullptr,
                                         bool transport_haar = true) {
  const FieldCtx* F = H.field;
  BasisRuleOperator tau = BasisRuleOperator::tau(F);
  auto pre_tau = [&](const BasisRuleOperator& op, std::string nm) {
    auto t = tau;
    auto o = op;
    return BasisRuleOperator::binary22(
        [t, o](BasisIndex a, BasisIndex b) { return apply(o, t.rule2(a, b)); }, std::move(nm));
  };
  auto post_tau = [&](const BasisRuleOperator& op, std::string nm) {
    auto t = tau;
    auto o = op;
    return BasisRuleOperator::binary22(
        [t, o](BasisIndex a, BasisIndex b) { return apply(t, o.rule2(a, b)); }, std::move(nm));
  };
  auto conj_tau = [&](const BasisRuleOperator& op, std::string nm) {
    auto t = tau;
    auto o = op;
    return BasisRuleOperator::binary22(
        [t, o](BasisIndex a, BasisIndex b) { return apply(t, apply(o, t.rule2(a, b))); },
        std::move(nm));
  };

  QuantumGroupData V = H;
  V.name = H.name + variant_suffix(v);
  std::string sfx = variant_suffix(v);

  if (v == Variant::op || v == Variant::opcop) {
    auto mu = H.mu;
    auto t = tau;
    V.mu = BasisRuleOperator::binary11(
        [mu, t](BasisIndex a, BasisIndex b) { return apply(mu, t.rule2(a, b)); },
        "mu" + sfx);
  }

  switch (v) {
    case Variant::op:
      V.gamma_l = pre_tau(H.rho_l, "gamma_l" + sfx);
      V.gamma_r = pre_tau(H.rho_r, "gamma_r" + sfx);
      V.rho_l = pre_tau(H.gamma_l, "rho_l" + sfx);
      V.rho_r = pre_tau(H.gamma_r, "rho_r" + sfx);
      V.gamma_l_inv = post_tau(H.rho_l_inv, "gamma_l_inv" + sfx);
      V.gamma_r_inv = post_tau(H.rho_r_inv, "gamma_r_inv" + sfx);
      V.rho_l_inv = post_tau(H.gamma_l_inv, "rho_l_inv" + sfx);
      V.rho_r_inv = post_tau(H.gamma_r_inv, "rho_r_inv" + sfx);
      break;
    case Variant::cop:
      V.gamma_l = post_tau(H.gamma_r, "gamma_l" + sfx);
      V.gamma_r = post_tau(H.gamma_l, "gamma_r" + sfx);
      V.rho_l = post_tau(H.rho_r, "rho_l" + sfx);
      V.rho_r = post_tau(H.rho_l, "rho_r" + sfx);
      V.gamma_l_inv = pre_tau(H.gamma_r_inv, "gamma_l_inv" + sfx);
      V.gamma_r_inv = pre_tau(H.gamma_l_inv, "gamma_r_inv" + sfx);
      V.rho_l_inv = pre_tau(H.rho_r_inv, "rho_l_inv" + sfx);
      V.rho_r_inv = pre_tau(H.rho_l_inv, "rho_r_inv" + sfx);
      break;
    case Variant::opcop:
      V.gamma_l = conj_tau(H.rho_r, "gamma_l" + sfx);
      V.gamma_r = conj_tau(H.rho_l, "gamma_r" + sfx);
      V.rho_l = conj_tau(H.gamma_r, "rho_l" + sfx);
      V.rho_r = conj_tau(H.gamma_l, "rho_r" + sfx);
      V.gamma_l_inv = conj_tau(H.rho_r_inv, "gamma_l_inv" + sfx);
      V.gamma_r_inv = conj_tau(H.rho_l_inv, "gamma_r_inv" + sfx);
      V.rho_l_inv = conj_tau(H.gamma_r_inv, "rho_l_inv" + sfx);
      V.rho_r_inv = conj_tau(H.gamma_l_inv, "rho_r_inv" + sfx);
      break;
  }

  if ((v == Variant::cop || v == Variant::opcop) && transport_haar) {
    const BasisRuleOperator* S = S_for_haar;
    if (!S && H.crosscheck.S) S = &*H.crosscheck.S;
    if (!S)
      throw Error(H.name + ": variant " + sfx +
                  " needs the antipode for its left Haar functional");
    auto Sop = *S;
    auto phi = H.phi;
    V.phi = Functional{F,
                       [Sop, phi](BasisIndex b) { return phi.eval(Sop.rule1(b)); },
                       "phi" + sfx};
  }

  // transported cross-check maps
  CrossCheck cc;
  cc.eps = H.crosscheck.eps;
  if (H.crosscheck.S && H.crosscheck.S_inv) {
    if (v == Variant::opcop) {
      cc.S = H.crosscheck.S;
      cc.S_inv = H.crosscheck.S_inv;
    } else {
      cc.S = H.crosscheck.S_inv;
      cc.S_inv = H.crosscheck.S;
    }
  }
  if (H.crosscheck.sigma && H.crosscheck.sigma_inv && v == Variant::cop) {
    cc.sigma = H.crosscheck.sigma;
    cc.sigma_inv = H.crosscheck.sigma_inv;
  }
  V.crosscheck = std::move(cc);
  return V;
}

// Structure-constant equality of two bundles over a common basis encoding.
inline bool structure_equal(const QuantumGroupData& A, const QuantumGroupData& B,
                            int radius, std::string* why = nullptr) {
  auto win = A.basis->window(radius);
  auto explain = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (BasisIndex a : win) {
    if (!(A.phi(a) == B.phi(a))) return explain("phi differs at " + A.label(a));
  }
  struct Named {
    const BasisRuleOperator* x;
    const BasisRuleOperator* y;
    const char* name;
  };
  Named ops[] = {{&A.mu, &B.mu, "mu"},
                 {&A.gamma_l, &B.gamma_l, "gamma_l"},
                 {&A.gamma_r, &B.gamma_r, "gamma_r"},
                 {&A.rho_l, &B.rho_l, "rho_l"},
                 {&A.rho_r, &B.rho_r, "rho_r"},
                 {&A.gamma_l_inv, &B.gamma_l_inv, "gamma_l_inv"},
                 {&A.gamma_r_inv, &B.gamma_r_inv, "gamma_r_inv"},
                 {&A.rho_l_inv, &B.rho_l_inv, "rho_l_inv"},
                 {&A.rho_r_inv, &B.rho_r_inv, "rho_r_inv"}};
  for (const auto& o : ops)
    for (BasisIndex a : win)
      for (BasisIndex b : win)
        if (o.x->rule2(a, b) != o.y->rule2(a, b))
          return explain(std::string(o.name) + " differs at (" + A.label(a) + ", " +
                         A.label(b) + ")");
  return true;
}

// The three multiplier laws on a window.
inline Report multiplier_check(const QuantumGroupData& H, const Multiplier& m, int radius) {
  Report rep;
  auto win = H.basis->window(radius);
  auto lbl = H.basis->labeler();
  auto run = [&](const std::string& id, const std::string& law, auto&& fn) {
    CheckResult c{id, law, true, ""};
    for (BasisIndex a : win) {
      for (BasisIndex b : win) {
        Vec fa = vec_unit(a, H.field), fb = vec_unit(b, H.field);
        auto [lhs, rhs] = fn(fa, fb);
        if (lhs != rhs) {
          c.pass = false;
          c.counterexample = "(" + lbl(a) + ", " + lbl(b) + "): lhs = " +
                             lhs.to_string(lbl) + ", rhs = " + rhs.to_string(lbl);
          break;
        }
      }
      if (!c.pass) break;
    }
    rep.checks.push_back(std::move(c));
  };
  run("multiplier.left", "L(fg) = L(f)g", [&](const Vec& f, const Vec& g) {
    return std::pair{m.L(H.product(f, g)), H.product(m.L(f), g)};
  });
  run("multiplier.right", "R(fg) = f R(g)", [&](const Vec& f, const Vec& g) {
    return std::pair{m.R(H.product(f, g)), H.product(f, m.R(g))};
  });
  run("multiplier.compat", "f L(g) = R(f) g", [&](const Vec& f, const Vec& g) {
    return std::pair{H.product(f, m.L(g)), H.product(m.R(f), g)};
  });
  return rep;
}

}  // namespace aqg
