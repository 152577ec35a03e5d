#pragma once

// Exact group models supplying basis labels, group arithmetic and word-length
// windows. Elements are encoded directly into 64-bit basis indices, so group
// operations never allocate and need no interning:
//
//   cyclic Z_n          value 0..n-1
//   products A x B      a * |B| + b               (finite factors)
//   symmetric S_n, n<=4 rank in lexicographic list of permutations
//   Z^k, k<=3           21-bit biased coordinates
//   free group F_k      5-bit length + 2..3 bits per letter, reduced words
//
// enumerate(r) lists the ball of word length <= r in canonical order
// (by length, then by encoding); it is closed under inversion.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aqg/scalar.hpp"
#include "aqg/tensor.hpp"

namespace aqg {

struct GroupModel {
  virtual ~GroupModel() = default;
  virtual std::string group_name() const = 0;
  virtual BasisIndex identity() const = 0;
  virtual BasisIndex multiply(BasisIndex a, BasisIndex b) const = 0;
  virtual BasisIndex invert(BasisIndex a) const = 0;
  virtual unsigned word_length(BasisIndex a) const = 0;
  virtual std::string label(BasisIndex a) const = 0;
  virtual std::optional<BasisIndex> parse(const std::string& s) const = 0;
  // nullopt when infinite
  virtual std::optional<std::size_t> order() const = 0;
  virtual std::vector<BasisIndex> generators() const = 0;

  // Ball of word length <= radius, canonical order. For finite groups small
  // enough this is the whole group regardless of radius.
  std::vector<BasisIndex> enumerate(int radius) const {
    std::vector<BasisIndex> ball{identity()};
    std::vector<BasisIndex> frontier{identity()};
    auto gens = generators();
    std::vector<BasisIndex> all_gens;
    for (auto g : gens) {
      all_gens.push_back(g);
      BasisIndex gi = invert(g);
      if (gi != g) all_gens.push_back(gi);
    }
    for (int step = 0; step < radius; ++step) {
      std::vector<BasisIndex> next;
      for (BasisIndex x : frontier)
        for (BasisIndex g : all_gens) {
          BasisIndex y = multiply(x, g);
          if (word_length(y) != static_cast<unsigned>(step + 1)) continue;
          next.push_back(y);
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      ball.insert(ball.end(), next.begin(), next.end());
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return ball;
  }
};

class CyclicGroup final : public GroupModel {
 public:
  explicit CyclicGroup(unsigned n) : n_(n) {
    if (n < 1) throw Error("cyclic group: order must be >= 1");
  }
  std::string group_name() const override { return "Z" + std::to_string(n_); }
  BasisIndex identity() const override { return 0; }
  BasisIndex multiply(BasisIndex a, BasisIndex b) const override { return (a + b) % n_; }
  BasisIndex invert(BasisIndex a) const override { return (n_ - a) % n_; }
  unsigned word_length(BasisIndex a) const override {
    return static_cast<unsigned>(std::min<BasisIndex>(a, n_ - a));
  }
  std::string label(BasisIndex a) const override { return std::to_string(a); }
  std::optional<BasisIndex> parse(const std::string& s) const override {
    try {
      unsigned long v = std::stoul(s);
      if (v >= n_) return std::nullopt;
      return v;
    } catch (...) {
      return std::nullopt;
    }
  }
  std::optional<std::size_t> order() const override { return n_; }
  std::vector<BasisIndex> generators() const override {
    return n_ > 1 ? std::vector<BasisIndex>{1} : std::vector<BasisIndex>{};
  }

 private:
  unsigned n_;
};

class ProductGroup final : public GroupModel {
 public:
  ProductGroup(std::shared_ptr<const GroupModel> a, std::shared_ptr<const GroupModel> b)
      : a_(std::move(a)), b_(std::move(b)) {
    auto ob = b_->order();
    if (!ob) throw Error("product group: second factor must be finite");
    bn_ = *ob;
    if (!a_->order()) throw Error("product group: first factor must be finite");
  }
  std::string group_name() const override {
    return a_->group_name() + "x" + b_->group_name();
  }
  BasisIndex identity() const override { return pack(a_->identity(), b_->identity()); }
  BasisIndex multiply(BasisIndex x, BasisIndex y) const override {
    return pack(a_->multiply(xa(x), xa(y)), b_->multiply(xb(x), xb(y)));
  }
  BasisIndex invert(BasisIndex x) const override {
    return pack(a_->invert(xa(x)), b_->invert(xb(x)));
  }
  unsigned word_length(BasisIndex x) const override {
    return a_->word_length(xa(x)) + b_->word_length(xb(x));
  }
  std::string label(BasisIndex x) const override {
    return a_->label(xa(x)) + "|" + b_->label(xb(x));
  }
  std::optional<BasisIndex> parse(const std::string& s) const override {
    auto bar = s.find('|');
    if (bar == std::string::npos) return std::nullopt;
    auto pa = a_->parse(s.substr(0, bar));
    auto pb = b_->parse(s.substr(bar + 1));
    if (!pa || !pb) return std::nullopt;
    return pack(*pa, *pb);
  }
  std::optional<std::size_t> order() const override { return *a_->order() * bn_; }
  std::vector<BasisIndex> generators() const override {
    std::vector<BasisIndex> g;
    for (auto x : a_->generators()) g.push_back(pack(x, b_->identity()));
    for (auto x : b_->generators()) g.push_back(pack(a_->identity(), x));
    return g;
  }

 private:
  BasisIndex pack(BasisIndex a, BasisIndex b) const { return a * bn_ + b; }
  BasisIndex xa(BasisIndex x) const { return x / bn_; }
  BasisIndex xb(BasisIndex x) const { return x % bn_; }
  std::shared_ptr<const GroupModel> a_, b_;
  std::size_t bn_;
};

// S_n for n <= 4; elements indexed into the lexicographically sorted list of
// one-line permutations. Word length = inversion count (length over adjacent
// transpositions).
class SymmetricGroup final : public GroupModel {
 public:
  explicit SymmetricGroup(unsigned n) : n_(n) {
    if (n < 1 || n > 4) throw Error("symmetric group: supported for n <= 4");
    std::array<std::uint8_t, 4> p{};
    for (unsigned i = 0; i < n_; ++i) p[i] = static_cast<std::uint8_t>(i);
    do {
      perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n_));
  }
  std::string group_name() const override { return "S" + std::to_string(n_); }
  BasisIndex identity() const override { return 0; }
  BasisIndex multiply(BasisIndex a, BasisIndex b) const override {
    // (a*b)(i) = a(b(i)) : apply b first
    const auto& pa = perms_[a];
    const auto& pb = perms_[b];
    std::array<std::uint8_t, 4> r{};
    for (unsigned i = 0; i < n_; ++i) r[i] = pa[pb[i]];
    return index_of(r);
  }
  BasisIndex invert(BasisIndex a) const override {
    const auto& pa = perms_[a];
    std::array<std::uint8_t, 4> r{};
    for (unsigned i = 0; i < n_; ++i) r[pa[i]] = static_cast<std::uint8_t>(i);
    return index_of(r);
  }
  unsigned word_length(BasisIndex a) const override {
    const auto& p = perms_[a];
    unsigned inv = 0;
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = i + 1; j < n_; ++j)
        if (p[i] > p[j]) ++inv;
    return inv;
  }
  std::string label(BasisIndex a) const override {
    std::string s;
    for (unsigned i = 0; i < n_; ++i) s += static_cast<char>('1' + perms_[a][i]);
    return s;
  }
  std::optional<BasisIndex> parse(const std::string& s) const override {
    if (s.size() != n_) return std::nullopt;
    std::array<std::uint8_t, 4> p{};
    std::array<bool, 4> seen{};
    for (unsigned i = 0; i < n_; ++i) {
      int v = s[i] - '1';
      if (v < 0 || v >= static_cast<int>(n_) || seen[v]) return std::nullopt;
      seen[v] = true;
      p[i] = static_cast<std::uint8_t>(v);
    }
    return index_of(p);
  }
  std::optional<std::size_t> order() const override { return perms_.size(); }
  std::vector<BasisIndex> generators() const override {
    // adjacent transpositions
    std::vector<BasisIndex> g;
    for (unsigned i = 0; i + 1 < n_; ++i) {
      std::array<std::uint8_t, 4> p{};
      for (unsigned j = 0; j < n_; ++j) p[j] = static_cast<std::uint8_t>(j);
      std::swap(p[i], p[i + 1]);
      g.push_back(index_of(p));
    }
    return g;
  }

 private:
  BasisIndex index_of(const std::array<std::uint8_t, 4>& p) const {
    auto it = std::lower_bound(perms_.begin(), perms_.end(), p,
                               [&](const auto& x, const auto& y) {
                                 for (unsigned i = 0; i < n_; ++i) {
                                   if (x[i] != y[i]) return x[i] < y[i];
                                 }
                                 return false;
                               });
    return static_cast<BasisIndex>(it - perms_.begin());
  }
  unsigned n_;
  std::vector<std::array<std::uint8_t, 4>> perms_;
};

// Free abelian group Z^k, k <= 3; generators are the unit vectors, word
// length is the l1 norm. Coordinates are biased 21-bit fields.
class FreeAbelianGroup final : public GroupModel {
 public:
  explicit FreeAbelianGroup(unsigned k) : k_(k) {
    if (k < 1 || k > 3) throw Error("Z^k: supported for k <= 3");
  }
  std::string group_name() const override {
    return k_ == 1 ? "Z" : "Z^" + std::to_string(k_);
  }
  BasisIndex identity() const override { return pack({0, 0, 0}); }
  BasisIndex multiply(BasisIndex a, BasisIndex b) const override {
    auto xa = unpack(a), xb = unpack(b);
    for (unsigned i = 0; i < k_; ++i) xa[i] += xb[i];
    return pack(xa);
  }
  BasisIndex invert(BasisIndex a) const override {
    auto x = unpack(a);
    for (unsigned i = 0; i < k_; ++i) x[i] = -x[i];
    return pack(x);
  }
  unsigned word_length(BasisIndex a) const override {
    auto x = unpack(a);
    long s = 0;
    for (unsigned i = 0; i < k_; ++i) s += std::abs(x[i]);
    return static_cast<unsigned>(s);
  }
  std::string label(BasisIndex a) const override {
    auto x = unpack(a);
    std::string s;
    for (unsigned i = 0; i < k_; ++i) {
      if (i) s += ",";
      s += std::to_string(x[i]);
    }
    return s;
  }
  std::optional<BasisIndex> parse(const std::string& s) const override {
    std::array<long, 3> x{0, 0, 0};
    std::stringstream ss(s);
    std::string part;
    unsigned i = 0;
    while (std::getline(ss, part, ',')) {
      if (i >= k_) return std::nullopt;
      try {
        x[i++] = std::stol(part);
      } catch (...) {
        return std::nullopt;
      }
    }
    if (i != k_) return std::nullopt;
    if (std::abs(x[0]) > kMax || std::abs(x[1]) > kMax || std::abs(x[2]) > kMax)
      return std::nullopt;
    return pack(x);
  }
  std::optional<std::size_t> order() const override { return std::nullopt; }
  std::vector<BasisIndex> generators() const override {
    std::vector<BasisIndex> g;
    for (unsigned i = 0; i < k_; ++i) {
      std::array<long, 3> x{0, 0, 0};
      x[i] = 1;
      g.push_back(pack(x));
    }
    return g;
  }

 private:
  static constexpr long kMax = (1L << 20) - 1;
  BasisIndex pack(const std::array<long, 3>& x) const {
    BasisIndex r = 0;
    for (unsigned i = 0; i < 3; ++i) {
      long v = x[i];
      if (std::abs(v) > kMax) throw Error("Z^k element out of encodable range");
      r |= static_cast<BasisIndex>(v + (1L << 20)) << (21 * i);
    }
    return r;
  }
  std::array<long, 3> unpack(BasisIndex a) const {
    std::array<long, 3> x{};
    for (unsigned i = 0; i < 3; ++i)
      x[i] = static_cast<long>((a >> (21 * i)) & ((1ULL << 21) - 1)) - (1L << 20);
    return x;
  }
  unsigned k_;
};

// Free group F_k on k <= 2 generators a, b with inverses written A, B.
// Reduced words encoded with 2 bits per letter and a 5-bit length; words up
// to length 29 are representable, enough for compositions at desk windows.
class FreeGroup final : public GroupModel {
 public:
  explicit FreeGroup(unsigned k) : k_(k) {
    if (k < 1 || k > 2) throw Error("free group: supported for k <= 2");
  }
  std::string group_name() const override { return "F" + std::to_string(k_); }
  BasisIndex identity() const override { return 0; }

  BasisIndex multiply(BasisIndex a, BasisIndex b) const override {
    // packed arithmetic: cancel letters at the seam, then splice
    BasisIndex la = a & 31u, lb = b & 31u;
    BasisIndex wa = a >> 5, wb = b >> 5;
    while (la && lb) {
      unsigned last_a = static_cast<unsigned>((wa >> (2 * (la - 1))) & 3u);
      unsigned first_b = static_cast<unsigned>(wb & 3u);
      if (last_a != (first_b ^ 1u)) break;
      --la;
      wa &= la ? ((BasisIndex{1} << (2 * la)) - 1) : 0;
      --lb;
      wb >>= 2;
    }
    if (la + lb > kMaxLen) throw Error("free group word too long to encode");
    return (((wb << (2 * la)) | wa) << 5) | (la + lb);
  }

  BasisIndex invert(BasisIndex a) const override {
    BasisIndex l = a & 31u;
    BasisIndex w = a >> 5, r = 0;
    for (BasisIndex i = 0; i < l; ++i) {
      r = (r << 2) | ((w & 3u) ^ 1u);
      w >>= 2;
    }
    return (r << 5) | l;
  }

  unsigned word_length(BasisIndex a) const override {
    return static_cast<unsigned>(a & 31u);
  }

  std::string label(BasisIndex x) const override {
    auto w = decode(x);
    if (w.empty()) return "e";
    static const char* letters[4] = {"a", "A", "b", "B"};
    std::string s;
    for (auto l : w) s += letters[l];
    return s;
  }

  std::optional<BasisIndex> parse(const std::string& s) const override {
    if (s == "e" || s.empty()) return identity();
    std::vector<unsigned> w;
    for (char c : s) {
      unsigned l;
      switch (c) {
        case 'a': l = 0; break;
        case 'A': l = 1; break;
        case 'b': l = 2; break;
        case 'B': l = 3; break;
        default: return std::nullopt;
      }
      if (l >= 2 * k_) return std::nullopt;
      if (!w.empty() && w.back() == (l ^ 1u)) return std::nullopt;  // not reduced
      w.push_back(l);
    }
    if (w.size() > kMaxLen) return std::nullopt;
    return encode(w);
  }

  std::optional<std::size_t> order() const override { return std::nullopt; }
  std::vector<BasisIndex> generators() const override {
    std::vector<BasisIndex> g;
    for (unsigned i = 0; i < k_; ++i) g.push_back(encode({2 * i}));
    return g;
  }

 private:
  static constexpr std::size_t kMaxLen = 29;

  std::vector<unsigned> decode(BasisIndex x) const {
    unsigned len = static_cast<unsigned>(x & 31u);
    std::vector<unsigned> w(len);
    for (unsigned i = 0; i < len; ++i)
      w[i] = static_cast<unsigned>((x >> (5 + 2 * i)) & 3u);
    return w;
  }

  BasisIndex encode(const std::vector<unsigned>& w) const {
    if (w.size() > kMaxLen) throw Error("free group word too long to encode");
    BasisIndex x = static_cast<BasisIndex>(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      x |= static_cast<BasisIndex>(w[i]) << (5 + 2 * i);
    return x;
  }

  unsigned k_;
};

// Parse a group name: "Zn", "Z", "Z^k", "Sn", "Fk", or products "AxB" of two
// finite cyclic groups (e.g. "Z2xZ2").
inline std::shared_ptr<const GroupModel> make_group(const std::string& name) {
  auto x = name.find('x');
  if (x != std::string::npos) {
    auto a = make_group(name.substr(0, x));
    auto b = make_group(name.substr(x + 1));
    return std::make_shared<ProductGroup>(a, b);
  }
  if (name == "Z") return std::make_shared<FreeAbelianGroup>(1);
  if (name.size() >= 3 && name[0] == 'Z' && name[1] == '^')
    return std::make_shared<FreeAbelianGroup>(static_cast<unsigned>(std::stoul(name.substr(2))));
  if (!name.empty() && name[0] == 'Z')
    return std::make_shared<CyclicGroup>(static_cast<unsigned>(std::stoul(name.substr(1))));
  if (!name.empty() && name[0] == 'S')
    return std::make_shared<SymmetricGroup>(static_cast<unsigned>(std::stoul(name.substr(1))));
  if (!name.empty() && name[0] == 'F')
    return std::make_shared<FreeGroup>(static_cast<unsigned>(std::stoul(name.substr(1))));
  throw Error("unknown group '" + name + "'");
}

}  // namespace aqg
