#pragma once

// Exact arithmetic in cyclotomic rational fields Q(zeta_n).
//
// A scalar is a polynomial in zeta_n with rational coefficients, kept reduced
// modulo the n-th cyclotomic polynomial Phi_n. Reduction mod Phi_n (rather
// than x^n - 1) makes the representation canonical: two scalars are equal iff
// their coefficient vectors are equal. Coefficients use the Rat fast path;
// only polynomial division/inversion machinery works in plain GMP.

#include <gmpxx.h>

#include <algorithm>
#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqg/rat.hpp"

namespace aqg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

using Poly = std::vector<mpq_class>;  // coefficients, index = degree

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// Exact division with remainder; divisor must be nonzero.
inline void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  q.assign(a.size(), mpq_class(0));
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    poly_trim(a);
  }
  poly_trim(q);
  r = std::move(a);
}

// Cyclotomic polynomial Phi_n by dividing x^n - 1 by Phi_d for proper d | n.
inline Poly cyclotomic(unsigned n) {
  static std::mutex mtx;
  static std::map<unsigned, Poly> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<unsigned> divs;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  for (unsigned d : divs) {
    if (cache.count(d)) continue;
    Poly p(d + 1, mpq_class(0));
    p[0] = -1;
    p[d] = 1;  // x^d - 1
    for (unsigned e : divs) {
      if (e >= d || d % e != 0) continue;
      Poly q, r;
      poly_divmod(p, cache.at(e), q, r);
      if (!r.empty()) throw Error("cyclotomic: inexact division (bug)");
      p = std::move(q);
    }
    cache[d] = std::move(p);
  }
  return cache.at(n);
}

}  // namespace detail

// Immutable per-conductor context: Phi_n plus precomputed powers
// x^(deg), ..., x^(2 deg - 2) reduced mod Phi_n for fast multiplication.
struct FieldCtx {
  unsigned conductor = 1;
  std::size_t deg = 1;
  detail::Poly phi;                     // monic, degree = deg
  std::vector<std::vector<Rat>> xpow;   // xpow[i] = x^(deg+i) mod phi

  explicit FieldCtx(unsigned n) : conductor(n) {
    if (n < 1) throw Error("FieldSpec: conductor must be >= 1");
    phi = detail::cyclotomic(n);
    deg = phi.size() - 1;
    // products of reduced scalars have degree <= 2 deg - 2
    for (std::size_t i = 0; deg >= 2 && i <= deg - 2; ++i) {
      detail::Poly cur(deg + i + 1, mpq_class(0));
      cur[deg + i] = 1;
      detail::Poly q, r;
      detail::poly_divmod(cur, phi, q, r);
      r.resize(deg, mpq_class(0));
      std::vector<Rat> row(deg);
      for (std::size_t j = 0; j < deg; ++j) row[j] = Rat::of_mpq(r[j]);
      xpow.push_back(std::move(row));
    }
  }
};

// FieldSpec: conductor n (n = 1 means plain Q). Contexts are interned for
// the lifetime of the process; Scalars hold a raw pointer to theirs.
struct FieldSpec {
  unsigned conductor = 1;
  bool operator==(const FieldSpec&) const = default;
};

inline const FieldCtx* field_context(unsigned conductor) {
  static std::mutex mtx;
  static std::map<unsigned, std::unique_ptr<FieldCtx>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[conductor];
  if (!slot) slot = std::make_unique<FieldCtx>(conductor);
  return slot.get();
}

inline const FieldCtx* field_context(const FieldSpec& spec) {
  return field_context(spec.conductor);
}

class Scalar {
 public:
  Scalar() : F_(field_context(1u)), c_(1) {}

  static Scalar zero(const FieldCtx* F) { return Scalar(F); }

  static Scalar one(const FieldCtx* F) {
    Scalar s(F);
    s.c_[0] = Rat::of_long(1);
    return s;
  }

  static Scalar of_rational(const FieldCtx* F, const mpq_class& q) {
    Scalar s(F);
    s.c_[0] = Rat::of_mpq(q);  // canonicalized on entry
    return s;
  }

  static Scalar of_rat(const FieldCtx* F, Rat r) {
    Scalar s(F);
    s.c_[0] = std::move(r);
    return s;
  }

  static Scalar of_int(const FieldCtx* F, long long v) {
    Scalar s(F);
    s.c_[0] = Rat::of_long(v);
    return s;
  }

  // zeta_n^k in canonical form (k reduced mod n).
  static Scalar root_of_unity(const FieldCtx* F, long k) {
    long n = static_cast<long>(F->conductor);
    long r = ((k % n) + n) % n;
    detail::Poly p(static_cast<std::size_t>(r) + 1, mpq_class(0));
    p[static_cast<std::size_t>(r)] = 1;
    detail::Poly q, rem;
    detail::poly_divmod(p, F->phi, q, rem);
    Scalar s(F);
    for (std::size_t i = 0; i < rem.size(); ++i) s.c_[i] = Rat::of_mpq(rem[i]);
    return s;
  }

  const FieldCtx* field() const { return F_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (!q.is_zero()) return false;
    return true;
  }

  bool is_one() const {
    if (!c_[0].is_one()) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }

  bool operator==(const Scalar& o) const {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar operator-() const {
    Scalar r(*this);
    for (auto& q : r.c_) q = -q;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    const FieldCtx* F = a.F_;
    std::size_t d = F->deg;
    if (d == 1) {
      Scalar r(F);
      r.c_[0] = a.c_[0] * b.c_[0];
      return r;
    }
    boost::container::small_vector<Rat, 8> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j].is_zero()) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Scalar r(F);
    for (std::size_t i = 0; i < d; ++i) r.c_[i] = std::move(prod[i]);
    for (std::size_t i = d; i < 2 * d - 1; ++i) {
      if (prod[i].is_zero()) continue;
      const auto& red = F->xpow[i - d];
      for (std::size_t j = 0; j < d; ++j)
        if (!red[j].is_zero()) r.c_[j] += prod[i] * red[j];
    }
    return r;
  }

  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Multiplicative inverse via extended Euclid in Q[x] mod Phi_n.
  Scalar inverse() const {
    if (is_zero()) throw Error("Scalar: division by zero");
    if (F_->deg == 1) {
      Scalar r(F_);
      r.c_[0] = c_[0].inverse();
      return r;
    }
    detail::Poly a(F_->phi);
    detail::Poly b(F_->deg);
    for (std::size_t i = 0; i < c_.size(); ++i) b[i] = c_[i].to_mpq();
    detail::poly_trim(b);
    detail::Poly s0{}, s1{mpq_class(1)};
    detail::Poly r0 = a, r1 = b;
    while (!r1.empty() && r1.size() > 1) {
      detail::Poly q, rem;
      detail::poly_divmod(r0, r1, q, rem);
      detail::Poly s2 = s0;  // s2 = s0 - q*s1
      detail::Poly qs1 = detail::poly_mul(q, s1);
      if (s2.size() < qs1.size()) s2.resize(qs1.size(), mpq_class(0));
      for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
      detail::poly_trim(s2);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) throw Error("Scalar: inverse of zero divisor (bug: Phi_n not coprime)");
    mpq_class c = r1[0];
    detail::Poly inv = s1;
    for (auto& q : inv) q /= c;
    detail::Poly qq, rem;
    detail::poly_divmod(inv, F_->phi, qq, rem);
    Scalar out(F_);
    for (std::size_t i = 0; i < rem.size(); ++i) out.c_[i] = Rat::of_mpq(rem[i]);
    return out;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  // When every coefficient above the constant term vanishes, the scalar is a
  // plain rational; used to compare instances over conductor-1/2 fields.
  std::optional<mpq_class> as_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return std::nullopt;
    return c_[0].to_mpq();
  }

  const Rat& coeff(std::size_t i) const { return c_[i]; }
  std::size_t degree_bound() const { return c_.size(); }

  // Textual literal: "p0/q0,p1/q1,..." rational coefficients of 1, zeta,
  // zeta^2, ...; trailing zeros omitted; the zero scalar prints as "0".
  std::string to_literal() const {
    std::size_t last = c_.size();
    while (last > 0 && c_[last - 1].is_zero()) --last;
    if (last == 0) return "0";
    std::string s;
    for (std::size_t i = 0; i < last; ++i) {
      if (i) s += ",";
      s += c_[i].str();
    }
    return s;
  }

  static Scalar parse(const FieldCtx* F, const std::string& text) {
    Scalar s(F);
    std::string t = text;
    if (t.empty()) return s;
    std::size_t pos = 0, idx = 0;
    while (pos <= t.size()) {
      std::size_t comma = t.find(',', pos);
      std::string part =
          t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (idx >= F->deg)
        throw Error("scalar literal has more than deg(Phi_n) coefficients: '" + text + "'");
      if (!part.empty()) {
        bool shape_ok = part.find_first_not_of("0123456789/+-") == std::string::npos &&
                        std::count(part.begin(), part.end(), '/') <= 1;
        try {
          if (!shape_ok) throw Error("bad rational");
          mpq_class q(part);
          if (q.get_den() == 0) throw Error("zero denominator");
          q.canonicalize();
          s.c_[idx] = Rat::of_mpq(q);
        } catch (const std::exception&) {
          throw Error("bad rational '" + part + "' in scalar literal '" + text + "'");
        }
      }
      ++idx;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return s;
  }

  std::string to_string() const {  // human-readable, e.g. "1 - 2*z^2"
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      mpq_class v = c_[i].to_mpq();
      if (first) {
        if (v < 0) {
          os << "-";
          v = -v;
        }
      } else {
        os << (v < 0 ? " - " : " + ");
        if (v < 0) v = -v;
      }
      bool unit = (v == 1) && i > 0;
      if (!unit) os << v.get_str();
      if (i > 0) {
        if (!unit) os << "*";
        os << "z";
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  explicit Scalar(const FieldCtx* F) : F_(F), c_(F->deg) {}

  void check_same(const Scalar& o) const {
    if (F_ != o.F_) throw Error("mixed FieldSpec in scalar arithmetic");
  }

  const FieldCtx* F_;
  boost::container::small_vector<Rat, 2> c_;
};

}  // namespace aqg
