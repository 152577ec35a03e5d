#pragma once

// Exact dense linear algebra over the scalar field: Gaussian elimination with
// deterministic pivoting (first nonzero in row order), solving, null spaces,
// and inversion of rule-defined operators on a finite span.

#include <optional>
#include <vector>

#include "aqg/operators.hpp"

namespace aqg {

using Mat = std::vector<std::vector<Scalar>>;

inline Mat mat_zero(std::size_t rows, std::size_t cols, const FieldCtx* F) {
  return Mat(rows, std::vector<Scalar>(cols, Scalar::zero(F)));
}

// Reduced row echelon form in place; returns pivot column of each pivot row.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    Scalar inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Mat m) { return rref(m).size(); }

// Solve A x = b; returns the particular solution with free variables zero,
// preferring pivots in earlier columns (deterministic, minimal support in
// column order). nullopt if infeasible.
inline std::optional<std::vector<Scalar>> solve(const Mat& a, const std::vector<Scalar>& b,
                                                const FieldCtx* F) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  Mat aug = a;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug);
  // inconsistent if a pivot lands in the augmented column
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<Scalar> x(cols, Scalar::zero(F));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

// Basis of the null space of A (vectors of length cols).
inline std::vector<std::vector<Scalar>> nullspace(Mat a, const FieldCtx* F) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<Scalar> v(cols, Scalar::zero(F));
    v[freec] = Scalar::one(F);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -a[i][freec];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Mat> inverse(const Mat& a, const FieldCtx* F) {
  std::size_t n = a.size();
  Mat aug = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      aug[i].push_back(i == j ? Scalar::one(F) : Scalar::zero(F));
  auto pivots = rref(aug);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  Mat inv = mat_zero(n, n, F);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Incremental span tracker over a fixed coordinate list. Used for the
// window-surjectivity (essentialness proxy) checks.
class SpanTracker {
 public:
  SpanTracker(std::vector<BasisIndex> coords, const FieldCtx* F)
      : F_(F), coords_(std::move(coords)) {
    for (std::size_t i = 0; i < coords_.size(); ++i) pos_[coords_[i]] = i;
  }

  // Add a vector; coordinates outside the tracked list are ignored (they can
  // only enlarge the span). Returns true if the span grew.
  bool add(const Vec& v) {
    std::vector<Scalar> row(coords_.size(), Scalar::zero(F_));
    bool any = false;
    for (const auto& e : v.terms()) {
      auto it = pos_.find(e.key[0]);
      if (it != pos_.end()) {
        row[it->second] = e.coeff;
        any = true;
      }
    }
    if (!any) return false;
    return reduce_insert(std::move(row));
  }

  std::size_t dim() const { return rows_.size(); }
  bool full() const { return rows_.size() == coords_.size(); }

 private:
  bool reduce_insert(std::vector<Scalar> row) {
    for (const auto& [lead, r] : rows_) {
      if (!row[lead].is_zero()) {
        Scalar f = row[lead];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * r[j];
      }
    }
    std::size_t lead = row.size();
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == row.size()) return false;
    Scalar inv = row[lead].inverse();
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] * inv;
    rows_.emplace_back(lead, std::move(row));
    return true;
  }

  const FieldCtx* F_;
  std::vector<BasisIndex> coords_;
  std::map<BasisIndex, std::size_t> pos_;
  std::vector<std::pair<std::size_t, std::vector<Scalar>>> rows_;
};

// Invert a rule-defined operator on the span of the given basis list (pairs
// of it for 2-leg operators), by exact Gaussian elimination. The operator
// must map the span bijectively to itself; otherwise an Error is thrown, for
// a singular matrix naming a kernel vector.
inline BasisRuleOperator invert_on_span(
    const BasisRuleOperator& op, const std::vector<BasisIndex>& basis, const FieldCtx* F,
    const std::function<std::string(BasisIndex)>& label = {}) {
  const int legs = op.in_legs();
  if (op.out_legs() != legs) throw Error("invert_on_span: operator must preserve arity");

  // composite index space
  std::vector<TKey> keys;
  if (legs == 1) {
    for (BasisIndex b : basis) keys.push_back(make_key(std::vector<BasisIndex>{b}));
  } else if (legs == 2) {
    for (BasisIndex a : basis)
      for (BasisIndex b : basis) keys.push_back(make_key(std::vector<BasisIndex>{a, b}));
  } else {
    throw Error("invert_on_span: unsupported arity");
  }
  std::map<TKey, std::size_t> pos;
  for (std::size_t i = 0; i < keys.size(); ++i) pos[keys[i]] = i;
  const std::size_t n = keys.size();

  auto fmt_key = [&](const TKey& k) {
    std::string s;
    for (int i = 0; i < legs; ++i) {
      if (i) s += "(x)";
      s += label ? label(k[i]) : std::to_string(k[i]);
    }
    return s;
  };

  Mat m = mat_zero(n, n, F);
  for (std::size_t j = 0; j < n; ++j) {
    std::span<const BasisIndex> ids(keys[j].data(), static_cast<std::size_t>(legs));
    Tensor img = op.rule(ids);
    for (const auto& e : img.terms()) {
      auto it = pos.find(e.key);
      if (it == pos.end())
        throw Error("invert_on_span: image of " + fmt_key(keys[j]) +
                    " escapes the span (term " + fmt_key(e.key) + ")");
      m[it->second][j] = e.coeff;
    }
  }

  auto inv = inverse(m, F);
  if (!inv) {
    auto ker = nullspace(m, F);
    std::string msg = "not invertible on span";
    if (!ker.empty()) {
      msg += "; kernel vector: ";
      bool first = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (ker[0][j].is_zero()) continue;
        if (!first) msg += " + ";
        first = false;
        msg += "(" + ker[0][j].to_string() + ")*" + fmt_key(keys[j]);
      }
    }
    throw Error(msg);
  }

  // dense inverse table: column k of inv = preimage of keys[k]
  auto table = std::make_shared<std::map<TKey, Tensor>>();
  for (std::size_t k = 0; k < n; ++k) {
    Tensor pre(legs);
    for (std::size_t j = 0; j < n; ++j)
      if (!(*inv)[j][k].is_zero()) pre.add(keys[j], (*inv)[j][k]);
    pre.normalize();
    table->emplace(keys[k], std::move(pre));
  }
  std::string nm = op.name().empty() ? "inv" : op.name() + "^-1";
  return BasisRuleOperator(
      legs, legs,
      [table, nm](std::span<const BasisIndex> ids) -> Tensor {
        auto it = table->find(make_key(ids));
        if (it == table->end())
          throw Error(nm + ": index outside inverted span");
        return it->second;
      },
      nm);
}

}  // namespace aqg
