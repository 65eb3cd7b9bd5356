#pragma once

// Tropical vectors, matrices and minors (minimum-weight matchings).

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/subset.hpp"
#include "tropmat/trop.hpp"

namespace tropmat {

class TropVector {
 public:
  TropVector() = default;
  explicit TropVector(std::vector<Trop> entries) : entries_(std::move(entries)) {
    check_ground_size(static_cast<int>(entries_.size()));
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (entries_[j].is_finite()) support_ |= singleton(static_cast<int>(j));
    }
  }
  /// n copies of `value`.
  TropVector(int n, const Trop& value) : TropVector(std::vector<Trop>(n, value)) {}

  int size() const { return static_cast<int>(entries_.size()); }
  const Trop& operator[](int j) const { return entries_[j]; }
  const std::vector<Trop>& entries() const { return entries_; }
  Subset support() const { return support_; }
  bool all_finite() const { return support_ == full_set(size()); }

  TropVector with(int j, const Trop& v) const {
    auto e = entries_;
    e[j] = v;
    return TropVector(std::move(e));
  }

  /// This vector plus alpha * e_j (alpha may be inf).
  TropVector bumped(int j, const Trop& alpha) const { return with(j, entries_[j] + alpha); }

  /// Adds lambda to every coordinate.
  TropVector shifted(const Trop& lambda) const {
    auto e = entries_;
    for (auto& v : e) v = v + lambda;
    return TropVector(std::move(e));
  }

  /// Coordinates outside `keep` become inf.
  TropVector restricted(Subset keep) const {
    auto e = entries_;
    for (int j = 0; j < size(); ++j) {
      if (!contains(keep, j)) e[j] = Trop::inf();
    }
    return TropVector(std::move(e));
  }

  /// Coordinatewise negation of finite entries, inf stays inf.
  TropVector negated_finite() const {
    auto e = entries_;
    for (auto& v : e) {
      if (v.is_finite()) v = -v;
    }
    return TropVector(std::move(e));
  }

  friend bool operator==(const TropVector& a, const TropVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const TropVector& a, const TropVector& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<Trop> entries_;
  Subset support_ = 0;
};

/// Coordinatewise min.
inline TropVector trop_add(const TropVector& a, const TropVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  std::vector<Trop> e(a.size());
  for (int j = 0; j < a.size(); ++j) e[j] = trop_add(a[j], b[j]);
  return TropVector(std::move(e));
}

class TropMatrix {
 public:
  TropMatrix() = default;
  explicit TropMatrix(std::vector<TropVector> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw InputError("matrix needs at least one row");
    for (const auto& r : rows_) {
      if (r.size() != rows_.front().size()) throw InputError("rows of unequal length");
    }
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const TropVector& row(int i) const { return rows_[i]; }
  const std::vector<TropVector>& row_list() const { return rows_; }
  const Trop& at(int i, int j) const { return rows_[i][j]; }

  std::vector<Trop> column(int j) const {
    std::vector<Trop> c;
    c.reserve(rows_.size());
    for (const auto& r : rows_) c.push_back(r[j]);
    return c;
  }

  /// Supports of the rows, in row order.
  std::vector<Subset> support_system() const {
    std::vector<Subset> s;
    s.reserve(rows_.size());
    for (const auto& r : rows_) s.push_back(r.support());
    return s;
  }

  TropMatrix with_entry(int i, int j, const Trop& v) const {
    auto r = rows_;
    r[i] = r[i].with(j, v);
    return TropMatrix(std::move(r));
  }

  TropMatrix with_row(int i, TropVector v) const {
    auto r = rows_;
    r[i] = std::move(v);
    return TropMatrix(std::move(r));
  }

  /// (A|x): a new last column.
  TropMatrix append_column(const std::vector<Trop>& x) const {
    if (static_cast<int>(x.size()) != rows()) throw InputError("column length must equal row count");
    std::vector<TropVector> r;
    r.reserve(rows_.size());
    for (int i = 0; i < rows(); ++i) {
      auto e = rows_[i].entries();
      e.push_back(x[i]);
      r.emplace_back(std::move(e));
    }
    return TropMatrix(std::move(r));
  }

  TropMatrix drop_last_column() const {
    std::vector<TropVector> r;
    for (const auto& row : rows_) {
      auto e = row.entries();
      e.pop_back();
      r.emplace_back(std::move(e));
    }
    return TropMatrix(std::move(r));
  }

  friend bool operator==(const TropMatrix& a, const TropMatrix& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<TropVector> rows_;
};

/// Minimum over bijections cols -> rows of the summed entries; inf when no
/// bijection uses only finite entries. The empty minor is 0.
inline Trop tropical_minor(const TropMatrix& a, Subset rows, Subset cols) {
  const int k = size_of(rows);
  if (k != size_of(cols)) throw InputError("non-square minor");
  if (k == 0) return Trop(0);
  const auto r = elements(rows), c = elements(cols);
  // dp[mask]: cheapest matching of rows r[0..|mask|) onto the columns in mask.
  std::vector<Trop> dp(std::size_t{1} << k);
  dp[0] = Trop(0);
  for (Subset mask = 1; mask < (Subset{1} << k); ++mask) {
    const int row = r[size_of(mask) - 1];
    Trop best;
    for (Subset m = mask; m != 0; m &= m - 1) {
      const int b = lowest(m);
      const Trop& w = a.at(row, c[b]);
      if (w.is_inf() || dp[mask ^ singleton(b)].is_inf()) continue;
      best = trop_add(best, dp[mask ^ singleton(b)] + w);
    }
    dp[mask] = std::move(best);
  }
  return dp.back();
}

/// Whether some bijection cols -> rows uses only finite entries.
inline bool has_finite_matching(const TropMatrix& a, Subset rows, Subset cols) {
  if (size_of(rows) != size_of(cols)) return false;
  return tropical_minor(a, rows, cols).is_finite();
}

/// tropical_minor(A, all rows, B) for every B in C(n, d), keyed by B.
inline std::map<Subset, Trop> all_maximal_minors(const TropMatrix& a) {
  if (a.rows() > a.cols()) throw InputError("more rows than columns: no maximal minors");
  std::map<Subset, Trop> out;
  const Subset all_rows = full_set(a.rows());
  for (Subset b : k_subsets(full_set(a.cols()), a.rows())) out.emplace(b, tropical_minor(a, all_rows, b));
  return out;
}

/// Memoized minors A_{I,J} of one fixed matrix for arbitrary |I| = |J|.
class MinorTable {
 public:
  explicit MinorTable(const TropMatrix& a) : a_(&a) {}

  const Trop& operator()(Subset rows, Subset cols) {
    const std::uint64_t key = (std::uint64_t{rows} << 32) | cols;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Trop value;
    if (size_of(rows) != size_of(cols)) throw InputError("non-square minor");
    if (rows == 0) {
      value = Trop(0);
    } else {
      // Expand along the lowest row.
      const int r = lowest(rows);
      for_each_element(cols, [&](int j) {
        const Trop& w = a_->at(r, j);
        if (w.is_inf()) return;
        const Trop& rest = (*this)(rows ^ singleton(r), cols ^ singleton(j));
        if (rest.is_finite()) value = trop_add(value, w + rest);
      });
    }
    return memo_.emplace(key, std::move(value)).first->second;
  }

 private:
  const TropMatrix* a_;
  std::unordered_map<std::uint64_t, Trop> memo_;
};

}  // namespace tropmat
