#pragma once

// The quantum-group data bundle: multiplication, the four Galois maps with
// their inverses, and the left Haar functional, over a basis model. Optional
// closed-form cross-check data (counit, antipode, modular maps) is carried
// for validation; the derivation machinery is the source of truth.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqg/basis.hpp"
#include "aqg/operators.hpp"

namespace aqg {

// Pair (L, R) of left/right multiplier rules on H.
struct Multiplier {
  std::function<Vec(const Vec&)> L;
  std::function<Vec(const Vec&)> R;
  std::string name;
};

struct CheckResult {
  std::string id;
  std::string law;
  bool pass = true;
  std::string counterexample;  // non-empty iff !pass
};

struct Report {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
  void append(Report other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
  }
};

// Closed-form data shipped by catalog instances, used only to cross-check
// the derived maps.
struct CrossCheck {
  std::optional<Functional> eps;
  std::optional<BasisRuleOperator> S, S_inv;
  std::optional<BasisRuleOperator> sigma, sigma_inv;
  std::optional<BasisRuleOperator> nu, nu_inv;
  std::optional<Vec> delta_elem;      // for instances where delta lies in H
  std::optional<Vec> delta_inv_elem;
};

struct QuantumGroupData {
  std::string name;
  const FieldCtx* field = nullptr;
  std::shared_ptr<const BasisModel> basis;

  BasisRuleOperator mu;  // 2 -> 1
  BasisRuleOperator gamma_l, gamma_r, rho_l, rho_r;                  // 2 -> 2
  BasisRuleOperator gamma_l_inv, gamma_r_inv, rho_l_inv, rho_r_inv;  // 2 -> 2
  Functional phi;

  std::optional<Vec> unit;
  // e with e*x = x = x*e for every x supported in the given span
  std::function<std::optional<Vec>(std::span<const BasisIndex>)> local_unit;

  CrossCheck crosscheck;

  bool finite() const { return basis->finite(); }

  Vec basis_vec(BasisIndex b) const { return vec_unit(b, field); }

  Vec product(const Vec& f, const Vec& g) const { return apply(mu, outer(f, g)); }

  std::string label(BasisIndex b) const { return basis->label(b); }
};

// Counit + antipode package (derived or transported).
struct HopfMaps {
  Functional eps;
  BasisRuleOperator S, S_inv;
};

inline Multiplier multiplier_of(const QuantumGroupData& H, const Vec& f) {
  return Multiplier{
      [&H, f](const Vec& g) { return H.product(f, g); },
      [&H, f](const Vec& g) { return H.product(g, f); },
      "iota(" + f.to_string(H.basis->labeler()) + ")"};
}

inline Multiplier identity_multiplier() {
  return Multiplier{[](const Vec& g) { return g; }, [](const Vec& g) { return g; }, "1"};
}

}  // namespace aqg
