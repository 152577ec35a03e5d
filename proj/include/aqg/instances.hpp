#pragma once

// Catalog of concrete quantum groups with closed-form structure rules:
// function algebras and group algebras of discrete groups, and the
// Sweedler/Taft family. Galois maps follow the defining formulas
//
//   gamma_l(f (x) g) = D(f)(g (x) 1)    gamma_r(f (x) g) = D(f)(1 (x) g)
//   rho_l(f (x) g)   = (f (x) 1)D(g)    rho_r(f (x) g)   = (1 (x) f)D(g)
//
// with D the comultiplication. Inverses come from the inverse group
// operations in closed form; the Taft family materializes exact tables and
// inverts them on the full basis.

#include <memory>
#include <string>
#include <vector>

#include "aqg/linalg.hpp"
#include "aqg/qgdata.hpp"

namespace aqg {

// ---------------------------------------------------------------------------
// Function algebra C_c(G): pointwise product, D(f)(r,s) = f(rs).
// ---------------------------------------------------------------------------
inline QuantumGroupData function_algebra(std::shared_ptr<const GroupModel> G,
                                         unsigned conductor = 1) {
  QuantumGroupData H;
  auto basis = std::make_shared<GroupBasisModel>(G);
  const FieldCtx* F = field_context(conductor);
  H.name = "fun:" + G->group_name();
  H.field = F;
  H.basis = basis;

  const GroupModel* g = G.get();

  H.mu = BasisRuleOperator::binary11(
      [F, g](BasisIndex s, BasisIndex t) {
        return s == t ? vec_unit(s, F) : Vec(1);
      },
      "mu");
  H.mu.set_mono([](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[0];
    return in[0] == in[1];
  });

  H.gamma_r = BasisRuleOperator::binary22(
      [F, g](BasisIndex s, BasisIndex t) {
        return t2_unit(g->multiply(s, g->invert(t)), t, F);
      },
      "gamma_r");
  H.gamma_r.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], g->invert(in[1]));
    out[1] = in[1];
    return true;
  });
  H.gamma_r_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex u, BasisIndex v) { return t2_unit(g->multiply(u, v), v, F); },
      "gamma_r_inv");
  H.gamma_r_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], in[1]);
    out[1] = in[1];
    return true;
  });

  H.gamma_l = BasisRuleOperator::binary22(
      [F, g](BasisIndex s, BasisIndex t) {
        return t2_unit(t, g->multiply(g->invert(t), s), F);
      },
      "gamma_l");
  H.gamma_l.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[1];
    out[1] = g->multiply(g->invert(in[1]), in[0]);
    return true;
  });
  H.gamma_l_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex a, BasisIndex b) { return t2_unit(g->multiply(a, b), a, F); },
      "gamma_l_inv");
  H.gamma_l_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], in[1]);
    out[1] = in[0];
    return true;
  });

  H.rho_l = BasisRuleOperator::binary22(
      [F, g](BasisIndex u, BasisIndex s) {
        return t2_unit(u, g->multiply(g->invert(u), s), F);
      },
      "rho_l");
  H.rho_l.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[0];
    out[1] = g->multiply(g->invert(in[0]), in[1]);
    return true;
  });
  H.rho_l_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex u, BasisIndex w) { return t2_unit(u, g->multiply(u, w), F); },
      "rho_l_inv");
  H.rho_l_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[0];
    out[1] = g->multiply(in[0], in[1]);
    return true;
  });

  H.rho_r = BasisRuleOperator::binary22(
      [F, g](BasisIndex u, BasisIndex s) {
        return t2_unit(g->multiply(s, g->invert(u)), u, F);
      },
      "rho_r");
  H.rho_r.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[1], g->invert(in[0]));
    out[1] = in[0];
    return true;
  });
  H.rho_r_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex a, BasisIndex b) { return t2_unit(b, g->multiply(a, b), F); },
      "rho_r_inv");
  H.rho_r_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[1];
    out[1] = g->multiply(in[0], in[1]);
    return true;
  });

  H.phi = Functional{F, [F](BasisIndex) { return Scalar::one(F); }, "phi"};

  if (auto n = G->order()) {
    Vec u(1);
    for (BasisIndex b : basis->window(0)) u.add({b}, Scalar::one(F));
    u.normalize();
    H.unit = u;
  }
  H.local_unit = [F](std::span<const BasisIndex> span) -> std::optional<Vec> {
    Vec u(1);
    std::vector<BasisIndex> seen(span.begin(), span.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (BasisIndex b : seen) u.add({b}, Scalar::one(F));
    u.normalize();
    return u;
  };

  H.crosscheck.eps = Functional{
      F,
      [F, g](BasisIndex s) {
        return s == g->identity() ? Scalar::one(F) : Scalar::zero(F);
      },
      "eps"};
  H.crosscheck.S = BasisRuleOperator::unary(
      [F, g](BasisIndex s) { return vec_unit(g->invert(s), F); }, "S");
  H.crosscheck.S_inv = H.crosscheck.S;
  H.crosscheck.sigma = BasisRuleOperator::identity(F);
  H.crosscheck.sigma_inv = H.crosscheck.sigma;
  H.crosscheck.nu = BasisRuleOperator::identity(F);
  H.crosscheck.nu_inv = H.crosscheck.nu;
  if (H.unit) {
    H.crosscheck.delta_elem = H.unit;
    H.crosscheck.delta_inv_elem = H.unit;
  }
  return H;
}

// ---------------------------------------------------------------------------
// Group algebra CG: convolution product u_s u_t = u_{st}, D(u_s) = u_s (x) u_s.
// ---------------------------------------------------------------------------
inline QuantumGroupData group_algebra(std::shared_ptr<const GroupModel> G,
                                      unsigned conductor = 1) {
  QuantumGroupData H;
  auto basis = std::make_shared<GroupBasisModel>(G);
  const FieldCtx* F = field_context(conductor);
  H.name = "grp:" + G->group_name();
  H.field = F;
  H.basis = basis;
  const GroupModel* g = G.get();

  H.mu = BasisRuleOperator::binary11(
      [F, g](BasisIndex s, BasisIndex t) { return vec_unit(g->multiply(s, t), F); }, "mu");
  H.mu.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], in[1]);
    return true;
  });

  H.gamma_r = BasisRuleOperator::binary22(
      [F, g](BasisIndex s, BasisIndex t) { return t2_unit(s, g->multiply(s, t), F); },
      "gamma_r");
  H.gamma_r.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[0];
    out[1] = g->multiply(in[0], in[1]);
    return true;
  });
  H.gamma_r_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex a, BasisIndex b) {
        return t2_unit(a, g->multiply(g->invert(a), b), F);
      },
      "gamma_r_inv");
  H.gamma_r_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[0];
    out[1] = g->multiply(g->invert(in[0]), in[1]);
    return true;
  });

  H.gamma_l = BasisRuleOperator::binary22(
      [F, g](BasisIndex s, BasisIndex t) { return t2_unit(g->multiply(s, t), s, F); },
      "gamma_l");
  H.gamma_l.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], in[1]);
    out[1] = in[0];
    return true;
  });
  H.gamma_l_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex a, BasisIndex b) {
        return t2_unit(b, g->multiply(g->invert(b), a), F);
      },
      "gamma_l_inv");
  H.gamma_l_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[1];
    out[1] = g->multiply(g->invert(in[1]), in[0]);
    return true;
  });

  H.rho_l = BasisRuleOperator::binary22(
      [F, g](BasisIndex f, BasisIndex s) { return t2_unit(g->multiply(f, s), s, F); },
      "rho_l");
  H.rho_l.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], in[1]);
    out[1] = in[1];
    return true;
  });
  H.rho_l_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex a, BasisIndex b) {
        return t2_unit(g->multiply(a, g->invert(b)), b, F);
      },
      "rho_l_inv");
  H.rho_l_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[0], g->invert(in[1]));
    out[1] = in[1];
    return true;
  });

  H.rho_r = BasisRuleOperator::binary22(
      [F, g](BasisIndex f, BasisIndex s) { return t2_unit(s, g->multiply(f, s), F); },
      "rho_r");
  H.rho_r.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = in[1];
    out[1] = g->multiply(in[0], in[1]);
    return true;
  });
  H.rho_r_inv = BasisRuleOperator::binary22(
      [F, g](BasisIndex a, BasisIndex b) {
        return t2_unit(g->multiply(b, g->invert(a)), a, F);
      },
      "rho_r_inv");
  H.rho_r_inv.set_mono([g](const BasisIndex* in, BasisIndex* out) {
    out[0] = g->multiply(in[1], g->invert(in[0]));
    out[1] = in[0];
    return true;
  });

  H.phi = Functional{F,
                     [F, g](BasisIndex s) {
                       return s == g->identity() ? Scalar::one(F) : Scalar::zero(F);
                     },
                     "phi"};

  H.unit = vec_unit(g->identity(), F);
  H.local_unit = [F, g](std::span<const BasisIndex>) -> std::optional<Vec> {
    return vec_unit(g->identity(), F);
  };

  H.crosscheck.eps = Functional{F, [F](BasisIndex) { return Scalar::one(F); }, "eps"};
  H.crosscheck.S = BasisRuleOperator::unary(
      [F, g](BasisIndex s) { return vec_unit(g->invert(s), F); }, "S");
  H.crosscheck.S_inv = H.crosscheck.S;
  H.crosscheck.sigma = BasisRuleOperator::identity(F);
  H.crosscheck.sigma_inv = H.crosscheck.sigma;
  H.crosscheck.nu = BasisRuleOperator::identity(F);
  H.crosscheck.nu_inv = H.crosscheck.nu;
  H.crosscheck.delta_elem = H.unit;
  H.crosscheck.delta_inv_elem = H.unit;
  return H;
}

// ---------------------------------------------------------------------------
// Taft family: basis g^a x^b (0 <= a,b < n), relations g^n = 1, x^n = 0,
// x g = zeta g x, D(g) = g (x) g, D(x) = x (x) 1 + g (x) x. The Haar
// functional is not hardcoded: it is the (unique up to scale) solution of the
// left-invariance system, normalized at the last basis element in its
// support. sweedler() is the n = 2 member over Q.
// ---------------------------------------------------------------------------
namespace detail_taft {

// product of two tensor-square elements in the componentwise algebra
inline Tensor2 t2_product(const BasisRuleOperator& mu, const Tensor2& A, const Tensor2& B) {
  Tensor2 out(2);
  for (const auto& ea : A.terms())
    for (const auto& eb : B.terms()) {
      Vec p = mu.rule2(ea.key[0], eb.key[0]);
      Vec q = mu.rule2(ea.key[1], eb.key[1]);
      Scalar c = ea.coeff * eb.coeff;
      for (const auto& tp : p.terms())
        for (const auto& tq : q.terms())
          out.add({tp.key[0], tq.key[0]}, tp.coeff * tq.coeff * c);
    }
  out.normalize();
  return out;
}

}  // namespace detail_taft

inline QuantumGroupData taft(unsigned n, unsigned conductor) {
  if (n < 2) throw Error("taft: order must be >= 2");
  if (conductor % n != 0 && !(n == 2 && conductor == 1))
    throw Error("taft: field conductor must be divisible by n");
  const FieldCtx* F = field_context(conductor);
  auto basis = std::make_shared<MonomialBasisModel>(n);

  // primitive n-th root inside Q(zeta_conductor); for n = 2 over Q use -1
  Scalar zeta = (n == 2 && conductor == 1)
                    ? Scalar::of_int(F, -1)
                    : Scalar::root_of_unity(F, static_cast<long>(conductor / n));

  QuantumGroupData H;
  H.name = (n == 2 && conductor == 1) ? "sweedler" : "taft:" + std::to_string(n);
  H.field = F;
  H.basis = basis;

  auto* bm = basis.get();
  // (g^a x^b)(g^c x^d) = zeta^(b c) g^(a+c) x^(b+d), zero when b + d >= n
  auto mu_rule = [F, bm, n, zeta](BasisIndex i, BasisIndex j) -> Vec {
    unsigned a = bm->g_exp(i), b = bm->x_exp(i);
    unsigned c = bm->g_exp(j), d = bm->x_exp(j);
    if (b + d >= n) return Vec(1);
    Scalar coef = Scalar::one(F);
    for (unsigned t = 0; t < (b * c) % n; ++t) coef *= zeta;
    return Tensor::unit({bm->id_of((a + c) % n, b + d)}, coef);
  };
  H.mu = BasisRuleOperator::binary11(mu_rule, "mu");

  // comultiplication table by iterated products of D(g), D(x)
  BasisIndex id1 = bm->id_of(0, 0), idg = bm->id_of(1, 0), idx = bm->id_of(0, 1);
  Tensor2 Dg = t2_unit(idg, idg, F);
  Tensor2 Dx = t2_unit(idx, id1, F) + t2_unit(idg, idx, F);
  std::size_t dim = static_cast<std::size_t>(n) * n;
  std::vector<Tensor2> Delta(dim, Tensor2(2));
  for (unsigned b = 0; b < n; ++b) {
    for (unsigned a = 0; a < n; ++a) {
      Tensor2 d = t2_unit(id1, id1, F);
      for (unsigned t = 0; t < a; ++t) d = detail_taft::t2_product(H.mu, d, Dg);
      for (unsigned t = 0; t < b; ++t) d = detail_taft::t2_product(H.mu, d, Dx);
      Delta[bm->id_of(a, b)] = d;
    }
  }

  auto left_mul = [&](const Tensor2& D, BasisIndex h, bool on_first) {
    // D * (e_h (x) 1) or D * (1 (x) e_h)
    Tensor2 rhs = on_first ? t2_unit(h, id1, F) : t2_unit(id1, h, F);
    return detail_taft::t2_product(H.mu, D, rhs);
  };
  auto right_mul = [&](const Tensor2& D, BasisIndex h, bool on_first) {
    Tensor2 lhs = on_first ? t2_unit(h, id1, F) : t2_unit(id1, h, F);
    return detail_taft::t2_product(H.mu, lhs, D);
  };

  auto mk22 = [&](std::function<Tensor2(BasisIndex, BasisIndex)> f, std::string name) {
    // materialize over the full square
    auto table = std::make_shared<std::map<TKey, Tensor2>>();
    for (BasisIndex i = 0; i < dim; ++i)
      for (BasisIndex j = 0; j < dim; ++j)
        table->emplace(make_key(std::vector<BasisIndex>{i, j}), f(i, j));
    return BasisRuleOperator(
        2, 2,
        [table, name](std::span<const BasisIndex> ids) -> Tensor {
          auto it = table->find(make_key(ids));
          if (it == table->end()) throw Error(name + ": index out of range");
          return it->second;
        },
        name);
  };

  H.gamma_l = mk22([&](BasisIndex i, BasisIndex j) { return left_mul(Delta[i], j, true); },
                   "gamma_l");
  H.gamma_r = mk22([&](BasisIndex i, BasisIndex j) { return left_mul(Delta[i], j, false); },
                   "gamma_r");
  H.rho_l = mk22([&](BasisIndex i, BasisIndex j) { return right_mul(Delta[j], i, true); },
                 "rho_l");
  H.rho_r = mk22([&](BasisIndex i, BasisIndex j) { return right_mul(Delta[j], i, false); },
                 "rho_r");

  std::vector<BasisIndex> full = basis->window(0);
  auto lbl = basis->labeler();
  H.gamma_l_inv = invert_on_span(H.gamma_l, full, F, lbl);
  H.gamma_r_inv = invert_on_span(H.gamma_r, full, F, lbl);
  H.rho_l_inv = invert_on_span(H.rho_l, full, F, lbl);
  H.rho_r_inv = invert_on_span(H.rho_r, full, F, lbl);

  // Haar functional: exact null space of the left-invariance system
  //   (id (x) w)gamma_l(f (x) g) = w(f) g,  (id (x) w)rho_l(g (x) f) = w(f) g
  {
    Mat rows;
    auto add_rows = [&](const Tensor2& T, BasisIndex f, BasisIndex target) {
      // sum_k T[(m,k)] w_k - [m = target] w_f = 0 for every m
      std::map<BasisIndex, std::vector<Scalar>> by_m;
      for (const auto& e : T.terms()) {
        auto& row = by_m[e.key[0]];
        if (row.empty()) row.assign(dim, Scalar::zero(F));
        row[e.key[1]] += e.coeff;
      }
      auto& trow = by_m[target];
      if (trow.empty()) trow.assign(dim, Scalar::zero(F));
      trow[f] -= Scalar::one(F);
      for (auto& [m, row] : by_m) rows.push_back(std::move(row));
    };
    for (BasisIndex f = 0; f < dim; ++f)
      for (BasisIndex g = 0; g < dim; ++g) {
        add_rows(H.gamma_l.rule2(f, g), f, g);
        add_rows(H.rho_l.rule2(g, f), f, g);
      }
    auto ker = nullspace(rows, F);
    if (ker.size() != 1)
      throw Error("taft: left-invariant functional space has dimension " +
                  std::to_string(ker.size()) + ", expected 1");
    auto w = ker[0];
    // normalize at the last nonzero value in basis order
    std::size_t last = dim;
    for (std::size_t i = 0; i < dim; ++i)
      if (!w[i].is_zero()) last = i;
    if (last == dim) throw Error("taft: zero invariant functional (bug)");
    Scalar norm = w[last].inverse();
    auto values = std::make_shared<std::vector<Scalar>>(dim, Scalar::zero(F));
    for (std::size_t i = 0; i < dim; ++i) (*values)[i] = w[i] * norm;
    H.phi = Functional{F,
                       [values](BasisIndex b) {
                         if (b >= values->size()) throw Error("phi: index out of range");
                         return (*values)[b];
                       },
                       "phi"};
  }

  H.unit = vec_unit(id1, F);
  H.local_unit = [F, id1](std::span<const BasisIndex>) -> std::optional<Vec> {
    return vec_unit(id1, F);
  };

  H.crosscheck.eps = Functional{
      F,
      [F, bm](BasisIndex i) {
        return bm->x_exp(i) == 0 ? Scalar::one(F) : Scalar::zero(F);
      },
      "eps"};

  // S(g) = g^{n-1}, S(x) = -g^{n-1} x, antihomomorphism: S(g^a x^b) = S(x)^b S(g)^a
  {
    Vec Sg = vec_unit(bm->id_of(n - 1, 0), F);
    Vec Sx = Tensor::unit({bm->id_of(n - 1, 1)}, -Scalar::one(F));
    auto table = std::make_shared<std::vector<Vec>>(dim, Vec(1));
    for (unsigned b = 0; b < n; ++b)
      for (unsigned a = 0; a < n; ++a) {
        Vec v = vec_unit(id1, F);
        for (unsigned t = 0; t < b; ++t) v = apply(H.mu, outer(v, Sx));
        for (unsigned t = 0; t < a; ++t) v = apply(H.mu, outer(v, Sg));
        (*table)[bm->id_of(a, b)] = v;
      }
    H.crosscheck.S = BasisRuleOperator::unary(
        [table](BasisIndex i) { return (*table)[i]; }, "S");
    H.crosscheck.S_inv = invert_on_span(*H.crosscheck.S, full, F, lbl);
  }

  if (n == 2) H.crosscheck.delta_elem = vec_unit(idg, F);
  return H;
}

inline QuantumGroupData sweedler() { return taft(2, 1); }

// One-dimensional quantum group C: the multiplicative unit alone.
inline QuantumGroupData trivial_instance(unsigned conductor = 1) {
  const FieldCtx* F = field_context(conductor);
  auto basis = std::make_shared<ListBasisModel>(std::vector<std::string>{"1"});
  QuantumGroupData H;
  H.name = "trivial";
  H.field = F;
  H.basis = basis;
  H.mu = BasisRuleOperator::binary11(
      [F](BasisIndex, BasisIndex) { return vec_unit(0, F); }, "mu");
  auto idop = BasisRuleOperator::binary22(
      [F](BasisIndex, BasisIndex) { return t2_unit(0, 0, F); }, "id2");
  H.gamma_l = H.gamma_r = H.rho_l = H.rho_r = idop;
  H.gamma_l_inv = H.gamma_r_inv = H.rho_l_inv = H.rho_r_inv = idop;
  H.phi = Functional{F, [F](BasisIndex) { return Scalar::one(F); }, "phi"};
  H.unit = vec_unit(0, F);
  H.local_unit = [F](std::span<const BasisIndex>) -> std::optional<Vec> {
    return vec_unit(0, F);
  };
  H.crosscheck.eps = Functional{F, [F](BasisIndex) { return Scalar::one(F); }, "eps"};
  H.crosscheck.S = BasisRuleOperator::identity(F);
  H.crosscheck.S_inv = H.crosscheck.S;
  H.crosscheck.sigma = H.crosscheck.S;
  H.crosscheck.sigma_inv = H.crosscheck.S;
  H.crosscheck.nu = H.crosscheck.S;
  H.crosscheck.nu_inv = H.crosscheck.S;
  H.crosscheck.delta_elem = H.unit;
  H.crosscheck.delta_inv_elem = H.unit;
  return H;
}

// Resolve an instance spec "fun:<group>", "grp:<group>", "sweedler",
// "taft:<n>[:<conductor>]", "trivial".
inline QuantumGroupData resolve_instance(const std::string& spec) {
  if (spec == "sweedler") return sweedler();
  if (spec == "trivial") return trivial_instance();
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error("unknown instance '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "fun") return function_algebra(make_group(rest));
  if (kind == "grp") return group_algebra(make_group(rest));
  if (kind == "taft") {
    auto colon2 = rest.find(':');
    unsigned n = static_cast<unsigned>(std::stoul(rest.substr(0, colon2)));
    unsigned cond = colon2 == std::string::npos
                        ? n
                        : static_cast<unsigned>(std::stoul(rest.substr(colon2 + 1)));
    return taft(n, cond);
  }
  throw Error("unknown instance '" + spec + "'");
}

inline std::vector<std::string> catalog_names() {
  return {"fun:Z2",    "fun:Z3", "fun:Z4", "fun:Z2xZ2", "fun:S3", "fun:Z", "fun:F2",
          "grp:Z2",    "grp:Z3", "grp:Z4", "grp:Z2xZ2", "grp:S3", "grp:Z", "grp:F2",
          "sweedler",  "taft:3", "trivial"};
}

}  // namespace aqg
