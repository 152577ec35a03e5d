#pragma once

// Rule-defined sparse linear operators and functionals, with the leg-numbering
// combinators used throughout the law suites: an operator acting on legs
// {i,j} of a higher tensor acts as the identity elsewhere.
//
// Rules are total on basis indices and must be pure; operators are never
// materialized globally, so infinite-basis instances only ever evaluate rules
// on finitely many indices.

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aqg/tensor.hpp"

namespace aqg {

// Linear functional given by a total rule on basis indices. The support of
// the rule may be infinite (phi on C_c of a group); evaluation on a Vec is
// the finite sum over the vector's support.
struct Functional {
  const FieldCtx* field = nullptr;
  std::function<Scalar(BasisIndex)> rule;
  std::string name;

  Scalar operator()(BasisIndex b) const { return rule(b); }

  Scalar eval(const Vec& v) const {
    Scalar acc = Scalar::zero(field);
    for (const auto& e : v.terms()) acc += e.coeff * rule(e.key[0]);
    return acc;
  }
};

// Monomial kernel: present when the rule maps every basis tuple to a single
// basis tuple with coefficient one (or to zero). Returns false for zero.
// Law sweeps use it to run chains on bare indices.
using MonoFn = std::function<bool(const BasisIndex* in, BasisIndex* out)>;

// Linear operator defined by a total rule on basis indices (arity 1 or 2 legs
// in, 1 or 2 legs out). The linear extension is applied term by term.
class BasisRuleOperator {
 public:
  BasisRuleOperator() = default;

  BasisRuleOperator(int in_legs, int out_legs,
                    std::function<Tensor(std::span<const BasisIndex>)> rule,
                    std::string name = {})
      : in_(in_legs), out_(out_legs), rule_(std::move(rule)), name_(std::move(name)) {}

  static BasisRuleOperator unary(std::function<Vec(BasisIndex)> f, std::string name = {}) {
    return BasisRuleOperator(
        1, 1,
        [f = std::move(f)](std::span<const BasisIndex> ids) { return f(ids[0]); },
        std::move(name));
  }

  static BasisRuleOperator binary11(std::function<Vec(BasisIndex, BasisIndex)> f,
                                    std::string name = {}) {
    return BasisRuleOperator(
        2, 1,
        [f = std::move(f)](std::span<const BasisIndex> ids) { return f(ids[0], ids[1]); },
        std::move(name));
  }

  static BasisRuleOperator binary22(std::function<Tensor2(BasisIndex, BasisIndex)> f,
                                    std::string name = {}) {
    return BasisRuleOperator(
        2, 2,
        [f = std::move(f)](std::span<const BasisIndex> ids) { return f(ids[0], ids[1]); },
        std::move(name));
  }

  static BasisRuleOperator identity(const FieldCtx* F) {
    auto op = unary([F](BasisIndex b) { return vec_unit(b, F); }, "id");
    op.set_mono([](const BasisIndex* in, BasisIndex* out) {
      out[0] = in[0];
      return true;
    });
    return op;
  }

  // flip map tau(f (x) g) = g (x) f
  static BasisRuleOperator tau(const FieldCtx* F) {
    auto op = binary22([F](BasisIndex a, BasisIndex b) { return t2_unit(b, a, F); }, "tau");
    op.set_mono([](const BasisIndex* in, BasisIndex* out) {
      out[0] = in[1];
      out[1] = in[0];
      return true;
    });
    return op;
  }

  bool valid() const { return static_cast<bool>(rule_); }
  int in_legs() const { return in_; }
  int out_legs() const { return out_; }
  const std::string& name() const { return name_; }

  BasisRuleOperator& set_mono(MonoFn m) {
    mono_ = std::move(m);
    return *this;
  }
  const MonoFn& mono() const { return mono_; }

  Tensor rule(std::span<const BasisIndex> ids) const { return rule_(ids); }

  Tensor rule1(BasisIndex a) const {
    BasisIndex ids[1] = {a};
    return rule_(ids);
  }

  Tensor rule2(BasisIndex a, BasisIndex b) const {
    BasisIndex ids[2] = {a, b};
    return rule_(ids);
  }

  // Composition other-after-this on full tensors of matching rank.
  BasisRuleOperator then(const BasisRuleOperator& next, std::string name = {}) const;

  // Precompute the rule over the given keys (built before parallel sweeps;
  // lookups afterwards are read-only). Falls back to the rule elsewhere.
  BasisRuleOperator memoized_over(const std::vector<std::vector<BasisIndex>>& keys) const {
    auto table = std::make_shared<std::map<TKey, Tensor>>();
    for (const auto& k : keys) {
      if (static_cast<int>(k.size()) != in_) throw Error("memoized_over: arity mismatch");
      table->emplace(make_key(k), rule_(k));
    }
    auto base = rule_;
    return BasisRuleOperator(
        in_, out_,
        [table, base](std::span<const BasisIndex> ids) {
          auto it = table->find(make_key(ids));
          if (it != table->end()) return it->second;
          return base(ids);
        },
        name_);
  }

 private:
  int in_ = 1;
  int out_ = 1;
  std::function<Tensor(std::span<const BasisIndex>)> rule_;
  MonoFn mono_;
  std::string name_;
};

// Linear extension of op to a whole tensor whose rank equals op.in_legs().
inline Tensor apply(const BasisRuleOperator& op, const Tensor& x) {
  if (x.rank() != op.in_legs()) throw Error("apply: arity mismatch");
  Tensor out(op.out_legs());
  for (const auto& e : x.terms()) {
    std::span<const BasisIndex> ids(e.key.data(), static_cast<std::size_t>(x.rank()));
    Tensor img = op.rule(ids);
    for (const auto& t : img.terms()) out.add(t.key, t.coeff * e.coeff);
  }
  out.normalize();
  return out;
}

// Apply op to the named legs (1-based, distinct, within rank) of x, identity
// elsewhere. Output legs replace the input legs' positions in ascending
// order; when the operator has fewer outputs than inputs the surplus
// positions are removed.
inline Tensor leg_apply(const BasisRuleOperator& op, std::span<const int> legs,
                        const Tensor& x) {
  int rank = x.rank();
  int in = op.in_legs(), out = op.out_legs();
  if (static_cast<int>(legs.size()) != in) throw Error("leg_apply: wrong number of legs");
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (legs[i] < 1 || legs[i] > rank) throw Error("leg_apply: leg out of range");
    if (i + 1 < legs.size() && legs[i + 1] <= legs[i])
      throw Error("leg_apply: legs must be distinct and ascending");
  }
  int new_rank = rank - in + out;
  if (new_rank < 1 || new_rank > kMaxRank) throw Error("leg_apply: resulting rank unsupported");

  // positions (0-based) of op inputs; legs are validated ascending above
  std::array<int, kMaxRank> inpos{};
  for (int i = 0; i < in; ++i) inpos[static_cast<std::size_t>(i)] = legs[static_cast<std::size_t>(i)] - 1;
  auto is_input = [&](int pos) {
    for (int i = 0; i < in; ++i)
      if (inpos[static_cast<std::size_t>(i)] == pos) return true;
    return false;
  };

  Tensor result(new_rank);
  std::array<BasisIndex, kMaxRank> args{};
  for (const auto& e : x.terms()) {
    for (int i = 0; i < in; ++i)
      args[static_cast<std::size_t>(i)] = e.key[inpos[static_cast<std::size_t>(i)]];
    Tensor img = op.rule(std::span<const BasisIndex>(args.data(), static_cast<std::size_t>(in)));
    if (img.is_zero()) continue;
    for (const auto& t : img.terms()) {
      TKey k{0, 0, 0, 0};
      int w = 0;          // write cursor in new key
      int img_leg = 0;    // next output leg to place
      int consumed = 0;   // how many input positions passed
      for (int pos = 0; pos < rank; ++pos) {
        if (!is_input(pos)) {
          k[w++] = e.key[pos];
        } else {
          // place outputs at the first `out` input positions (ascending)
          if (consumed < out) k[w++] = t.key[img_leg++];
          ++consumed;
        }
      }
      result.add(k, t.coeff * e.coeff);
    }
  }
  result.normalize();
  return result;
}

inline Tensor leg_apply(const BasisRuleOperator& op, std::initializer_list<int> legs,
                        const Tensor& x) {
  return leg_apply(op, std::span<const int>(legs.begin(), legs.size()), x);
}

// Apply a functional to one leg, contracting it away.
inline Tensor leg_functional(const Functional& f, int leg, const Tensor& x) {
  int rank = x.rank();
  if (leg < 1 || leg > rank) throw Error("leg_functional: leg out of range");
  if (rank == 1) throw Error("leg_functional: would produce rank 0; use Functional::eval");
  Tensor result(rank - 1);
  for (const auto& e : x.terms()) {
    Scalar c = e.coeff * f.rule(e.key[leg - 1]);
    if (c.is_zero()) continue;
    TKey k{0, 0, 0, 0};
    int w = 0;
    for (int pos = 0; pos < rank; ++pos)
      if (pos != leg - 1) k[w++] = e.key[pos];
    result.add(k, std::move(c));
  }
  result.normalize();
  return result;
}

// Full contraction of a rank-2 tensor by two functionals.
inline Scalar eval2(const Functional& f, const Functional& g, const Tensor& x) {
  if (x.rank() != 2) throw Error("eval2: rank 2 expected");
  Scalar acc = Scalar::zero(f.field);
  for (const auto& e : x.terms()) acc += e.coeff * f.rule(e.key[0]) * g.rule(e.key[1]);
  return acc;
}

inline BasisRuleOperator BasisRuleOperator::then(const BasisRuleOperator& next,
                                                 std::string name) const {
  if (out_ != next.in_legs()) throw Error("operator composition arity mismatch");
  auto self = *this;
  auto nx = next;
  return BasisRuleOperator(
      in_, next.out_legs(),
      [self, nx](std::span<const BasisIndex> ids) { return apply(nx, self.rule(ids)); },
      name.empty() ? nx.name() + "." + name_ : std::move(name));
}

}  // namespace aqg
