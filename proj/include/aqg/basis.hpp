#pragma once

// Basis models: label/index mapping plus enumeration-by-window. Windows of
// finite-dimensional instances are the full basis regardless of radius; group
// models list the word-length ball.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aqg/groups.hpp"
#include "aqg/tensor.hpp"

namespace aqg {

struct Window {
  int radius = 3;
};

struct BasisModel {
  virtual ~BasisModel() = default;
  virtual std::string label(BasisIndex b) const = 0;
  virtual std::optional<BasisIndex> parse(const std::string& s) const = 0;
  virtual std::vector<BasisIndex> window(int radius) const = 0;
  virtual std::optional<std::size_t> dimension() const = 0;

  bool finite() const { return dimension().has_value(); }

  std::function<std::string(BasisIndex)> labeler() const {
    return [this](BasisIndex b) { return label(b); };
  }
};

class GroupBasisModel final : public BasisModel {
 public:
  explicit GroupBasisModel(std::shared_ptr<const GroupModel> g) : g_(std::move(g)) {
    if (auto n = g_->order()) {
      // canonical order: by word length, then by encoding
      int r = 0;
      while (full_.size() < *n) {
        full_ = g_->enumerate(r++);
        if (r > 256) throw Error("group enumeration did not close (missing generators?)");
      }
    }
  }

  const GroupModel& group() const { return *g_; }

  std::string label(BasisIndex b) const override { return g_->label(b); }
  std::optional<BasisIndex> parse(const std::string& s) const override { return g_->parse(s); }
  std::vector<BasisIndex> window(int radius) const override {
    if (!full_.empty()) return full_;
    return g_->enumerate(radius);
  }
  std::optional<std::size_t> dimension() const override { return g_->order(); }

 private:
  std::shared_ptr<const GroupModel> g_;
  std::vector<BasisIndex> full_;
};

// Finite list of opaque labels; indices are positions in the list.
class ListBasisModel final : public BasisModel {
 public:
  explicit ListBasisModel(std::vector<std::string> labels) : labels_(std::move(labels)) {}

  std::string label(BasisIndex b) const override {
    if (b >= labels_.size()) return "#" + std::to_string(b);
    return labels_[b];
  }
  std::optional<BasisIndex> parse(const std::string& s) const override {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == s) return i;
    return std::nullopt;
  }
  std::vector<BasisIndex> window(int) const override {
    std::vector<BasisIndex> v(labels_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  }
  std::optional<std::size_t> dimension() const override { return labels_.size(); }

 private:
  std::vector<std::string> labels_;
};

// Monomials g^a x^b, 0 <= a,b < n, ordered 1, g, .., g^{n-1}, x, gx, ...;
// index = b*n + a, so the top monomial g^{n-1} x^{n-1} comes last.
class MonomialBasisModel final : public BasisModel {
 public:
  explicit MonomialBasisModel(unsigned n) : n_(n) {}

  unsigned n() const { return n_; }
  BasisIndex id_of(unsigned a, unsigned b) const { return static_cast<BasisIndex>(b) * n_ + a; }
  unsigned g_exp(BasisIndex i) const { return static_cast<unsigned>(i % n_); }
  unsigned x_exp(BasisIndex i) const { return static_cast<unsigned>(i / n_); }

  std::string label(BasisIndex i) const override {
    unsigned a = g_exp(i), b = x_exp(i);
    if (a == 0 && b == 0) return "1";
    std::string s;
    if (a == 1) s += "g";
    else if (a > 1) s += "g" + std::to_string(a);
    if (b == 1) s += "x";
    else if (b > 1) s += "x" + std::to_string(b);
    return s;
  }

  std::optional<BasisIndex> parse(const std::string& s) const override {
    if (s == "1") return id_of(0, 0);
    unsigned a = 0, b = 0;
    std::size_t pos = 0;
    auto read_exp = [&](char c, unsigned& out) {
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          unsigned v = 0;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + static_cast<unsigned>(s[pos++] - '0');
          out = v;
        } else {
          out = 1;
        }
      }
    };
    read_exp('g', a);
    read_exp('x', b);
    if (pos != s.size() || a >= n_ || b >= n_) return std::nullopt;
    if (a == 0 && b == 0) return std::nullopt;  // "1" handled above
    return id_of(a, b);
  }

  std::vector<BasisIndex> window(int) const override {
    std::vector<BasisIndex> v(static_cast<std::size_t>(n_) * n_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  }
  std::optional<std::size_t> dimension() const override {
    return static_cast<std::size_t>(n_) * n_;
  }

 private:
  unsigned n_;
};

// Composite basis for tensor products of two finite carriers:
// id = i * dim(B) + j.
class PairBasisModel final : public BasisModel {
 public:
  PairBasisModel(std::shared_ptr<const BasisModel> a, std::shared_ptr<const BasisModel> b)
      : a_(std::move(a)), b_(std::move(b)) {
    auto db = b_->dimension();
    auto da = a_->dimension();
    if (!da || !db) throw Error("pair basis requires finite carriers");
    bn_ = *db;
    // canonical order follows the factors' windows
    for (BasisIndex i : a_->window(0))
      for (BasisIndex j : b_->window(0)) order_.push_back(pack_pos(i, j));
  }

  BasisIndex pack_pos(BasisIndex i, BasisIndex j) const {
    return pos_of(a_, i) * bn_ + pos_of(b_, j);
  }
  BasisIndex first(BasisIndex id) const { return a_->window(0)[id / bn_]; }
  BasisIndex second(BasisIndex id) const { return b_->window(0)[id % bn_]; }

  std::string label(BasisIndex id) const override {
    return a_->label(first(id)) + "(x)" + b_->label(second(id));
  }
  std::optional<BasisIndex> parse(const std::string& s) const override {
    auto sep = s.find("(x)");
    if (sep == std::string::npos) return std::nullopt;
    auto pa = a_->parse(s.substr(0, sep));
    auto pb = b_->parse(s.substr(sep + 3));
    if (!pa || !pb) return std::nullopt;
    return pack_pos(*pa, *pb);
  }
  std::vector<BasisIndex> window(int) const override {
    std::vector<BasisIndex> v(order_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  }
  std::optional<std::size_t> dimension() const override { return order_.size(); }

 private:
  static BasisIndex pos_of(const std::shared_ptr<const BasisModel>& m, BasisIndex raw) {
    auto w = m->window(0);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] == raw) return i;
    throw Error("pair basis: index not in carrier");
  }
  std::shared_ptr<const BasisModel> a_, b_;
  std::size_t bn_;
  std::vector<BasisIndex> order_;
};

}  // namespace aqg
