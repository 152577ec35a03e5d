#pragma once

// Instance file schema (JSON): field names are fixed, all indices refer to
// the basis list order, scalars use the textual literal format
// "p0/q0,p1/q1,..." (coefficients of 1, zeta, zeta^2, ..., omitted tail = 0).
//
// {
//   "name":  "...",                         // optional
//   "field": {"conductor": n},
//   "basis": ["label", ...],
//   "unit":  [[i, "lit"], ...],             // optional
//   "mu":    [[i, j, [[k, "lit"], ...]], ...],
//   "galois": {
//     "gamma_l": [[i, j, [[k, l, "lit"], ...]], ...],
//     "gamma_r": ..., "rho_l": ..., "rho_r": ...,
//     "gamma_l_inv": ...                    // inverses optional
//   },
//   "phi":   [[i, "lit"], ...],
//   "partial": true                         // window-truncated dump
// }
//
// Custom instances are untrusted: load_custom builds the bundle, derives the
// counit and antipode, runs the full law suite and fails with the offending
// report when any law does not hold.

#include <fstream>

#include <json.hpp>

#include "aqg/laws.hpp"

namespace aqg {

namespace detail_io {

using nlohmann::json;

inline Error schema_error(const std::string& where, const std::string& what) {
  return Error("instance file, " + where + ": " + what);
}

inline std::size_t index_of(const json& v, std::size_t dim, const std::string& where) {
  if (!v.is_number_unsigned() && !v.is_number_integer())
    throw schema_error(where, "index must be an integer");
  long long i = v.get<long long>();
  if (i < 0 || static_cast<std::size_t>(i) >= dim)
    throw schema_error(where, "index " + std::to_string(i) + " outside basis of size " +
                                  std::to_string(dim));
  return static_cast<std::size_t>(i);
}

inline Scalar literal_of(const json& v, const FieldCtx* F, const std::string& where) {
  if (!v.is_string()) throw schema_error(where, "scalar literal must be a string");
  try {
    return Scalar::parse(F, v.get<std::string>());
  } catch (const Error& e) {
    throw schema_error(where, e.what());
  }
}

}  // namespace detail_io

struct LoadResult {
  std::optional<QuantumGroupData> data;
  Report report;                     // law suite outcome (when reached)
  std::vector<std::string> errors;   // parse/structure diagnostics
  bool ok = false;
};

inline LoadResult load_custom_json(const nlohmann::json& j, int radius = 3) {
  using nlohmann::json;
  using detail_io::index_of;
  using detail_io::literal_of;
  using detail_io::schema_error;
  LoadResult res;
  try {
    if (!j.is_object()) throw schema_error("document", "top level must be an object");
    if (!j.contains("field") || !j["field"].is_object() || !j["field"].contains("conductor"))
      throw schema_error("field", "missing {\"conductor\": n}");
    unsigned conductor = j["field"]["conductor"].get<unsigned>();
    const FieldCtx* F = field_context(conductor);

    if (!j.contains("basis") || !j["basis"].is_array())
      throw schema_error("basis", "missing label array");
    std::vector<std::string> labels = j["basis"].get<std::vector<std::string>>();
    if (labels.empty())
      throw schema_error("basis", "empty basis rejected: essential algebras are nonzero");
    const std::size_t dim = labels.size();
    auto basis = std::make_shared<ListBasisModel>(labels);

    if (j.value("partial", false))
      res.errors.push_back("warning: file is flagged 'partial' (window-truncated dump); "
                           "laws are unlikely to hold");

    // mu table
    auto mu_table = std::make_shared<std::map<TKey, Vec>>();
    if (!j.contains("mu") || !j["mu"].is_array()) throw schema_error("mu", "missing table");
    for (const auto& row : j["mu"]) {
      if (!row.is_array() || row.size() != 3)
        throw schema_error("mu", "each entry must be [i, j, [[k, lit], ...]]");
      std::size_t i = index_of(row[0], dim, "mu");
      std::size_t jj = index_of(row[1], dim, "mu");
      Vec img(1);
      for (const auto& t : row[2]) {
        if (!t.is_array() || t.size() != 2) throw schema_error("mu", "image term must be [k, lit]");
        img.add({static_cast<BasisIndex>(index_of(t[0], dim, "mu image"))},
                literal_of(t[1], F, "mu image"));
      }
      img.normalize();
      auto [it, inserted] =
          mu_table->emplace(make_key(std::vector<BasisIndex>{i, jj}), std::move(img));
      if (!inserted)
        throw schema_error("mu", "duplicate entry for (" + std::to_string(i) + ", " +
                                     std::to_string(jj) + ")");
    }
    BasisRuleOperator mu(
        2, 1,
        [mu_table](std::span<const BasisIndex> ids) -> Tensor {
          auto it = mu_table->find(make_key(ids));
          return it == mu_table->end() ? Vec(1) : it->second;
        },
        "mu");

    // galois tables
    if (!j.contains("galois") || !j["galois"].is_object())
      throw schema_error("galois", "missing {gamma_l, gamma_r, rho_l, rho_r}");
    auto load22 = [&](const std::string& key) -> std::optional<BasisRuleOperator> {
      if (!j["galois"].contains(key)) return std::nullopt;
      auto table = std::make_shared<std::map<TKey, Tensor2>>();
      for (const auto& row : j["galois"][key]) {
        if (!row.is_array() || row.size() != 3)
          throw schema_error("galois." + key, "each entry must be [i, j, [[k, l, lit], ...]]");
        std::size_t i = index_of(row[0], dim, "galois." + key);
        std::size_t jj = index_of(row[1], dim, "galois." + key);
        Tensor2 img(2);
        for (const auto& t : row[2]) {
          if (!t.is_array() || t.size() != 3)
            throw schema_error("galois." + key, "image term must be [k, l, lit]");
          img.add({static_cast<BasisIndex>(index_of(t[0], dim, "galois." + key)),
                   static_cast<BasisIndex>(index_of(t[1], dim, "galois." + key))},
                  literal_of(t[2], F, "galois." + key));
        }
        img.normalize();
        auto [it, inserted] =
            table->emplace(make_key(std::vector<BasisIndex>{i, jj}), std::move(img));
        if (!inserted)
          throw schema_error("galois." + key, "duplicate entry for (" + std::to_string(i) +
                                                  ", " + std::to_string(jj) + ")");
      }
      return BasisRuleOperator(
          2, 2,
          [table](std::span<const BasisIndex> ids) -> Tensor {
            auto it = table->find(make_key(ids));
            return it == table->end() ? Tensor2(2) : it->second;
          },
          key);
    };
    auto gamma_l = load22("gamma_l"), gamma_r = load22("gamma_r");
    auto rho_l = load22("rho_l"), rho_r = load22("rho_r");
    for (auto [op, nm] : {std::pair{&gamma_l, "gamma_l"}, {&gamma_r, "gamma_r"},
                          {&rho_l, "rho_l"}, {&rho_r, "rho_r"}})
      if (!op->has_value()) throw schema_error("galois", std::string("missing map ") + nm);

    // phi
    if (!j.contains("phi") || !j["phi"].is_array()) throw schema_error("phi", "missing table");
    auto phi_values = std::make_shared<std::vector<Scalar>>(dim, Scalar::zero(F));
    for (const auto& t : j["phi"]) {
      if (!t.is_array() || t.size() != 2) throw schema_error("phi", "entry must be [i, lit]");
      (*phi_values)[index_of(t[0], dim, "phi")] = literal_of(t[1], F, "phi");
    }

    QuantumGroupData H;
    H.name = j.value("name", std::string("custom"));
    H.field = F;
    H.basis = basis;
    H.mu = std::move(mu);
    H.gamma_l = std::move(*gamma_l);
    H.gamma_r = std::move(*gamma_r);
    H.rho_l = std::move(*rho_l);
    H.rho_r = std::move(*rho_r);
    H.phi = Functional{F,
                       [phi_values](BasisIndex b) {
                         if (b >= phi_values->size()) throw Error("phi: index out of range");
                         return (*phi_values)[b];
                       },
                       "phi"};

    auto full = basis->window(0);
    auto lbl = basis->labeler();
    auto inv_or_solve = [&](const std::optional<BasisRuleOperator>& given,
                            const BasisRuleOperator& fwd) {
      if (given) return *given;
      return invert_on_span(fwd, full, F, lbl);
    };
    H.gamma_l_inv = inv_or_solve(load22("gamma_l_inv"), H.gamma_l);
    H.gamma_r_inv = inv_or_solve(load22("gamma_r_inv"), H.gamma_r);
    H.rho_l_inv = inv_or_solve(load22("rho_l_inv"), H.rho_l);
    H.rho_r_inv = inv_or_solve(load22("rho_r_inv"), H.rho_r);

    if (j.contains("unit")) {
      Vec u(1);
      for (const auto& t : j["unit"]) {
        if (!t.is_array() || t.size() != 2) throw schema_error("unit", "entry must be [i, lit]");
        u.add({static_cast<BasisIndex>(index_of(t[0], dim, "unit"))},
              literal_of(t[1], F, "unit"));
      }
      u.normalize();
      H.unit = u;
      H.local_unit = [u](std::span<const BasisIndex>) -> std::optional<Vec> { return u; };
    }

    // untrusted: check the structural suites first, then derive the Hopf
    // maps and check those laws as well
    res.report = verify_laws(H, "algebra", Window{radius});
    res.report.append(verify_laws(H, "galois", Window{radius}));
    if (res.report.all_pass()) {
      try {
        HopfMaps hm = derive_hopf(H, radius);
        res.report.append(verify_laws(H, "hopf", Window{radius}, &hm));
        if (res.report.all_pass()) {
          H.crosscheck.eps = hm.eps;
          H.crosscheck.S = hm.S;
          H.crosscheck.S_inv = hm.S_inv;
        }
      } catch (const Error& e) {
        res.report.checks.push_back(
            {"derive.hopf", "counit/antipode derivation", false, e.what()});
      }
    }
    if (!res.report.all_pass()) {
      for (const auto& c : res.report.checks)
        if (!c.pass)
          res.errors.push_back("law failure: " + c.id + ": " + c.counterexample);
      return res;
    }
    res.data = std::move(H);
    res.ok = true;
    return res;
  } catch (const Error& e) {
    res.errors.push_back(e.what());
    return res;
  } catch (const nlohmann::json::exception& e) {
    res.errors.push_back(std::string("json: ") + e.what());
    return res;
  }
}

inline LoadResult load_custom_file(const std::string& path, int radius = 3) {
  std::ifstream in(path);
  LoadResult res;
  if (!in) {
    res.errors.push_back("cannot open '" + path + "'");
    return res;
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // report the line of the byte offset for easier fixing
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    res.errors.push_back("parse error at line " + std::to_string(line) + ": " + e.what());
    return res;
  }
  return load_custom_json(j, radius);
}

// Structure-constant equality of an original bundle against a reloaded dump,
// translating the file's position indices through the window enumeration.
inline bool roundtrip_equal(const QuantumGroupData& H, const QuantumGroupData& loaded,
                            int radius, std::string* why = nullptr) {
  auto win = H.basis->window(radius);
  std::map<BasisIndex, std::size_t> pos;
  for (std::size_t i = 0; i < win.size(); ++i) pos[win[i]] = i;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto to_positions = [&](const Tensor& t) {
    Tensor r(t.rank());
    for (const auto& e : t.terms()) {
      TKey k = e.key;
      for (int i = 0; i < t.rank(); ++i) {
        auto it = pos.find(e.key[i]);
        if (it == pos.end()) return std::optional<Tensor>();
        k[i] = it->second;
      }
      r.add(k, e.coeff);
    }
    r.normalize();
    return std::optional<Tensor>(std::move(r));
  };
  for (std::size_t i = 0; i < win.size(); ++i)
    if (!(H.phi(win[i]) == loaded.phi(i)))
      return fail("phi differs at " + H.label(win[i]));
  struct Named {
    const BasisRuleOperator* x;
    const BasisRuleOperator* y;
    const char* name;
  };
  Named ops[] = {{&H.mu, &loaded.mu, "mu"},
                 {&H.gamma_l, &loaded.gamma_l, "gamma_l"},
                 {&H.gamma_r, &loaded.gamma_r, "gamma_r"},
                 {&H.rho_l, &loaded.rho_l, "rho_l"},
                 {&H.rho_r, &loaded.rho_r, "rho_r"},
                 {&H.gamma_l_inv, &loaded.gamma_l_inv, "gamma_l_inv"},
                 {&H.gamma_r_inv, &loaded.gamma_r_inv, "gamma_r_inv"},
                 {&H.rho_l_inv, &loaded.rho_l_inv, "rho_l_inv"},
                 {&H.rho_r_inv, &loaded.rho_r_inv, "rho_r_inv"}};
  for (const auto& o : ops)
    for (std::size_t i = 0; i < win.size(); ++i)
      for (std::size_t j = 0; j < win.size(); ++j) {
        auto expected = to_positions(o.x->rule2(win[i], win[j]));
        if (!expected)
          return fail(std::string(o.name) + " image escapes the window at (" +
                      H.label(win[i]) + ", " + H.label(win[j]) + ")");
        if (*expected != o.y->rule2(i, j))
          return fail(std::string(o.name) + " differs at (" + H.label(win[i]) + ", " +
                      H.label(win[j]) + ")");
      }
  return true;
}

// Emit the instance schema. Finite-dimensional instances dump the full
// structure; infinite ones dump the window and are flagged "partial" (image
// terms escaping the window are dropped).
inline nlohmann::json export_instance(const QuantumGroupData& H, int radius = 3) {
  using nlohmann::json;
  auto win = H.basis->window(radius);
  std::map<BasisIndex, std::size_t> pos;
  for (std::size_t i = 0; i < win.size(); ++i) pos[win[i]] = i;
  bool partial = !H.finite();

  json j;
  j["name"] = H.name;
  j["field"] = {{"conductor", H.field->conductor}};
  json basis = json::array();
  for (BasisIndex b : win) basis.push_back(H.basis->label(b));
  j["basis"] = std::move(basis);
  if (partial) j["partial"] = true;

  auto vec_rows = [&](const Vec& v) {
    json rows = json::array();
    for (const auto& e : v.terms()) {
      auto it = pos.find(e.key[0]);
      if (it == pos.end()) continue;  // escapes the window: partial dump
      rows.push_back(json::array({it->second, e.coeff.to_literal()}));
    }
    return rows;
  };

  json mu = json::array();
  for (std::size_t i = 0; i < win.size(); ++i)
    for (std::size_t k = 0; k < win.size(); ++k) {
      Vec img = H.mu.rule2(win[i], win[k]);
      if (img.is_zero()) continue;
      mu.push_back(json::array({i, k, vec_rows(img)}));
    }
  j["mu"] = std::move(mu);

  auto dump22 = [&](const BasisRuleOperator& op) {
    json rows = json::array();
    for (std::size_t i = 0; i < win.size(); ++i)
      for (std::size_t k = 0; k < win.size(); ++k) {
        Tensor2 img = op.rule2(win[i], win[k]);
        if (img.is_zero()) continue;
        json terms = json::array();
        for (const auto& e : img.terms()) {
          auto p = pos.find(e.key[0]);
          auto q = pos.find(e.key[1]);
          if (p == pos.end() || q == pos.end()) continue;
          terms.push_back(json::array({p->second, q->second, e.coeff.to_literal()}));
        }
        rows.push_back(json::array({i, k, std::move(terms)}));
      }
    return rows;
  };
  j["galois"] = {{"gamma_l", dump22(H.gamma_l)},     {"gamma_r", dump22(H.gamma_r)},
                 {"rho_l", dump22(H.rho_l)},         {"rho_r", dump22(H.rho_r)},
                 {"gamma_l_inv", dump22(H.gamma_l_inv)},
                 {"gamma_r_inv", dump22(H.gamma_r_inv)},
                 {"rho_l_inv", dump22(H.rho_l_inv)}, {"rho_r_inv", dump22(H.rho_r_inv)}};

  json phi = json::array();
  for (std::size_t i = 0; i < win.size(); ++i) {
    Scalar v = H.phi(win[i]);
    if (!v.is_zero()) phi.push_back(json::array({i, v.to_literal()}));
  }
  j["phi"] = std::move(phi);

  if (H.unit) j["unit"] = vec_rows(*H.unit);
  return j;
}

}  // namespace aqg
