#pragma once

// Exact rational with a 64-bit fast path. Values stay in canonical form
// (lowest terms, positive denominator); arithmetic runs through 128-bit
// intermediates and spills to GMP only when a reduced result no longer fits
// in 64 bits. Structure constants and window sweeps stay entirely on the
// fast path; eliminations of large exact systems promote as needed.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>

namespace aqg {

class Rat {
 public:
  Rat() : n_(0), d_(1) {}
  Rat(long long n, long long d) : n_(n), d_(d) { canonicalize_small(); }
  static Rat of_long(long long v) { return Rat(v, 1); }

  static Rat of_mpq(const mpq_class& q) {
    Rat r;
    r.assign_mpq(q);
    return r;
  }

  Rat(const Rat& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rat(Rat&&) noexcept = default;
  Rat& operator=(const Rat& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rat& operator=(Rat&&) noexcept = default;

  bool small() const { return !big_; }

  bool is_zero() const { return big_ ? (*big_ == 0) : n_ == 0; }
  bool is_one() const { return big_ ? (*big_ == 1) : (n_ == 1 && d_ == 1); }

  bool operator==(const Rat& o) const {
    if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;  // both canonical
    return to_mpq() == o.to_mpq();
  }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  Rat operator-() const {
    if (big_) {
      Rat r;
      r.big_ = std::make_unique<mpq_class>(-*big_);
      return r;
    }
    if (n_ == INT64_MIN) return of_mpq(-to_mpq());
    Rat r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.small() && b.small()) {
      // Knuth: g = gcd(d1, d2); t = n1 (d2/g) + n2 (d1/g); g2 = gcd(t, g)
      long long g = std::gcd(a.d_, b.d_);
      __int128 t = (__int128)a.n_ * (b.d_ / g) + (__int128)b.n_ * (a.d_ / g);
      long long g2 = g == 1 ? 1 : (long long)gcd128(t < 0 ? -t : t, g);
      __int128 num = g2 == 1 ? t : t / g2;
      __int128 den = (__int128)(a.d_ / g) * (b.d_ / g2);
      Rat r;
      if (r.fit(num, den)) return r;
    }
    Rat r;
    r.assign_mpq(a.to_mpq() + b.to_mpq());
    return r;
  }

  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

  friend Rat operator*(const Rat& a, const Rat& b) {
    if (a.small() && b.small()) {
      // cross-reduce, then products of canonical parts stay canonical
      long long g1 = std::gcd(a.n_ == INT64_MIN ? (long long)1 : std::abs(a.n_), b.d_);
      long long g2 = std::gcd(b.n_ == INT64_MIN ? (long long)1 : std::abs(b.n_), a.d_);
      __int128 num = (__int128)(a.n_ / g1) * (b.n_ / g2);
      __int128 den = (__int128)(a.d_ / g2) * (b.d_ / g1);
      Rat r;
      if (r.fit(num, den)) return r;
    }
    Rat r;
    r.assign_mpq(a.to_mpq() * b.to_mpq());
    return r;
  }

  Rat inverse() const {
    if (is_zero()) throw std::domain_error("Rat: division by zero");
    if (small() && n_ != INT64_MIN) {
      Rat r;
      r.n_ = n_ < 0 ? -d_ : d_;
      r.d_ = n_ < 0 ? -n_ : n_;
      return r;
    }
    Rat r;
    r.assign_mpq(1 / to_mpq());
    return r;
  }

  friend Rat operator/(const Rat& a, const Rat& b) { return a * b.inverse(); }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(static_cast<long>(n_), static_cast<long>(d_));
    // long may be narrower than long long on exotic ABIs; here it is 64-bit
    q.canonicalize();
    return q;
  }

  std::string str() const {
    if (!big_) {
      std::string s = std::to_string(n_);
      if (d_ != 1) s += "/" + std::to_string(d_);
      return s;
    }
    return big_->get_str();
  }

 private:
  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static unsigned __int128 gcd128(__int128 a, long long b) {
    return gcd128((unsigned __int128)(a < 0 ? -a : a),
                  (unsigned __int128)(b < 0 ? -b : b));
  }

  // adopt num/den when the reduced value fits in int64; num/den are already
  // in lowest terms with den > 0
  bool fit(__int128 num, __int128 den) {
    if (den < 0) {
      den = -den;
      num = -num;
    }
    if (num == 0) den = 1;
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) return false;
    n_ = static_cast<long long>(num);
    d_ = static_cast<long long>(den);
    big_.reset();
    return true;
  }

  void canonicalize_small() {
    if (d_ == 0) throw std::domain_error("Rat: zero denominator");
    if (d_ < 0) {
      if (n_ == INT64_MIN || d_ == INT64_MIN) {
        mpq_class q(-static_cast<long>(n_), -static_cast<long>(d_));
        q.canonicalize();
        assign_mpq(q);
        return;
      }
      n_ = -n_;
      d_ = -d_;
    }
    long long g = std::gcd(n_ == INT64_MIN ? (long long)1 : std::abs(n_), d_);
    if (g > 1) {
      n_ /= g;
      d_ /= g;
    }
    if (n_ == 0) d_ = 1;
  }

  void assign_mpq(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    if (c.get_num().fits_slong_p() && c.get_den().fits_slong_p()) {
      n_ = c.get_num().get_si();
      d_ = c.get_den().get_si();
      big_.reset();
    } else {
      n_ = 0;
      d_ = 1;
      big_ = std::make_unique<mpq_class>(std::move(c));
    }
  }

  long long n_, d_;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace aqg
