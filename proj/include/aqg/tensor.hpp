#pragma once

// Finitely supported elements of H, H(x)H, H(x)H(x)H, ... over a basis index
// set. One generic sparse tensor type covers Vec (rank 1), Tensor2 and
// Tensor3; a few rank-4 intermediates occur in law checks.
//
// Zero coefficients are pruned eagerly, so equality is support-map equality.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include <boost/container/small_vector.hpp>

#include "aqg/scalar.hpp"

namespace aqg {

using BasisIndex = std::uint64_t;

inline constexpr int kMaxRank = 4;
using TKey = std::array<BasisIndex, kMaxRank>;  // entries beyond rank are 0

inline TKey make_key(std::span<const BasisIndex> ids) {
  TKey k{0, 0, 0, 0};
  for (std::size_t i = 0; i < ids.size(); ++i) k[i] = ids[i];
  return k;
}

class Tensor {
 public:
  struct Entry {
    TKey key;
    Scalar coeff;
  };
  using Terms = boost::container::small_vector<Entry, 4>;

  explicit Tensor(int rank = 1) : rank_(rank) {}

  static Tensor unit(std::initializer_list<BasisIndex> ids, Scalar c) {
    Tensor t(static_cast<int>(ids.size()));
    if (!c.is_zero()) {
      TKey k{0, 0, 0, 0};
      std::size_t i = 0;
      for (BasisIndex b : ids) k[i++] = b;
      t.terms_.push_back({k, std::move(c)});
    }
    return t;
  }

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // lvalue-only: iterating the terms of a temporary would dangle
  const Terms& terms() const& { return terms_; }
  const Terms& terms() const&& = delete;

  // Accumulate a term; call normalize() once done.
  void add(const TKey& key, Scalar c) {
    if (c.is_zero()) return;
    terms_.push_back({key, std::move(c)});
  }

  void add(std::initializer_list<BasisIndex> ids, Scalar c) {
    if (c.is_zero()) return;
    TKey k{0, 0, 0, 0};
    std::size_t i = 0;
    for (BasisIndex b : ids) k[i++] = b;
    terms_.push_back({k, std::move(c)});
  }

  void normalize() {
    if (terms_.empty()) return;
    std::sort(terms_.begin(), terms_.end(),
              [](const Entry& a, const Entry& b) { return a.key < b.key; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      TKey k = terms_[i].key;
      Scalar acc = std::move(terms_[i].coeff);
      ++i;
      while (i < terms_.size() && terms_[i].key == k) {
        acc += terms_[i].coeff;
        ++i;
      }
      if (!acc.is_zero()) {
        terms_[out].key = k;
        terms_[out].coeff = std::move(acc);
        ++out;
      }
    }
    terms_.resize(out);
  }

  Scalar at(const TKey& key, const FieldCtx* F) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), key,
        [](const Entry& e, const TKey& k) { return e.key < k; });
    if (it != terms_.end() && it->key == key) return it->coeff;
    return Scalar::zero(F);
  }

  bool operator==(const Tensor& o) const {
    if (rank_ != o.rank_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].key != o.terms_[i].key || terms_[i].coeff != o.terms_[i].coeff)
        return false;
    return true;
  }
  bool operator!=(const Tensor& o) const { return !(*this == o); }

  Tensor& operator+=(const Tensor& o) {
    if (rank_ != o.rank_) throw Error("tensor rank mismatch in addition");
    for (const auto& e : o.terms_) terms_.push_back(e);
    normalize();
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }

  Tensor scaled(const Scalar& c) const {
    Tensor r(rank_);
    if (c.is_zero()) return r;
    if (c.is_one()) return *this;
    for (const auto& e : terms_) r.terms_.push_back({e.key, e.coeff * c});
    return r;
  }

  Tensor operator-() const {
    Tensor r(rank_);
    for (const auto& e : terms_) r.terms_.push_back({e.key, -e.coeff});
    return r;
  }

  friend Tensor operator-(Tensor a, const Tensor& b) { return a += -b; }

  // Tensor product: concatenates key legs.
  friend Tensor outer(const Tensor& a, const Tensor& b) {
    Tensor r(a.rank_ + b.rank_);
    if (r.rank_ > kMaxRank) throw Error("tensor rank exceeds limit");
    for (const auto& ea : a.terms_)
      for (const auto& eb : b.terms_) {
        TKey k = ea.key;
        for (int i = 0; i < b.rank_; ++i) k[a.rank_ + i] = eb.key[i];
        r.terms_.push_back({k, ea.coeff * eb.coeff});
      }
    r.normalize();
    return r;
  }

  std::string to_string(const std::function<std::string(BasisIndex)>& label) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& e : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + e.coeff.to_string() + ")*";
      for (int i = 0; i < rank_; ++i) {
        if (i) s += "(x)";
        s += label(e.key[i]);
      }
    }
    return s;
  }

 private:
  int rank_;
  Terms terms_;
};

using Vec = Tensor;      // rank 1
using Tensor2 = Tensor;  // rank 2
using Tensor3 = Tensor;  // rank 3

inline Vec vec_unit(BasisIndex b, const FieldCtx* F) {
  return Tensor::unit({b}, Scalar::one(F));
}

inline Tensor2 t2_unit(BasisIndex a, BasisIndex b, const FieldCtx* F) {
  return Tensor::unit({a, b}, Scalar::one(F));
}

inline Tensor3 t3_unit(BasisIndex a, BasisIndex b, BasisIndex c, const FieldCtx* F) {
  return Tensor::unit({a, b, c}, Scalar::one(F));
}

}  // namespace aqg
