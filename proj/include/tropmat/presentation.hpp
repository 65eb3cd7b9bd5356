#pragma once

// Matrix presentations of transversal valuated matroids: the tropical Stiefel
// map, the distinguished apices, apex decompositions and minimality.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/matrix.hpp"
#include "tropmat/matroid.hpp"
#include "tropmat/subset.hpp"
#include "tropmat/trop.hpp"
#include "tropmat/valuated.hpp"

namespace tropmat {

/// The function B -> tropical_minor(A, all rows, B) on C(n, d), unchecked.
inline SubsetFunction stiefel_function(const TropMatrix& a) {
  if (a.rows() > a.cols()) throw InputError("more rows than columns");
  const int n = a.cols(), d = a.rows();
  MinorTable minors(a);
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(full_set(n), d)) v.emplace(b, minors(full_set(d), b));
  return SubsetFunction(n, full_set(n), d, v);
}

/// Stiefel(A) as a valuated matroid.
inline ValuatedMatroid stiefel(const TropMatrix& a) {
  SubsetFunction f = stiefel_function(a);
  if (f.support().empty()) throw InputError("not a presentation of any valuated matroid");
  try {
    return ValuatedMatroid(std::move(f));
  } catch (const InputError& e) {
    throw TheoremViolation(std::string("Stiefel image is not a valuated matroid: ") + e.what());
  }
}

/// A matrix together with the exact representative it presents.
class Presentation {
 public:
  explicit Presentation(TropMatrix a) : matrix_(std::move(a)), mu_(stiefel(matrix_)) {
    for (const auto& r : matrix_.row_list()) {
      if (r.support() == 0) throw InputError("presentation has an all-inf row");
    }
  }

  const TropMatrix& matrix() const { return matrix_; }
  const ValuatedMatroid& mu() const { return mu_; }
  int rows() const { return matrix_.rows(); }
  int cols() const { return matrix_.cols(); }

 private:
  TropMatrix matrix_;
  ValuatedMatroid mu_;
};

inline bool is_presentation(const TropMatrix& a, const ValuatedMatroid& mu) {
  if (a.rows() != mu.rank() || a.cols() != mu.universe() || mu.ground() != full_set(mu.universe())) return false;
  return stiefel_function(a) == mu.function();
}

/// Smallest value for entry (i, j) that leaves Stiefel(A) unchanged: the max
/// over B ∋ j of mu_B - w_B, where w_B is the minor of the other rows on B - j
/// (only B with finite w_B constrain the entry).
inline Trop entry_lower_bound(const Presentation& p, int i, int j) {
  const auto& a = p.matrix();
  const int d = a.rows();
  MinorTable minors(a);
  const Subset other_rows = full_set(d) ^ singleton(i);
  std::optional<Trop> bound;
  for (Subset rest : k_subsets(full_set(a.cols()) ^ singleton(j), d - 1)) {
    const Trop& w = minors(other_rows, rest);
    if (w.is_inf()) continue;
    Trop c = p.mu()[rest | singleton(j)] - w;
    bound = bound ? trop_max(*bound, c) : c;
  }
  return bound ? *bound : Trop::inf();
}

/// One row of an apex decomposition: row = apex + shift·1 + Σ_{j∈raised} α_j e_j.
struct ApexRow {
  int apex = 0;            // index of the apex row in the dapx matrix
  Subset flat = 0;         // F: coordinates where the apex is inf
  TropVector apex_point;   // the apex q
  Matroid matroid;         // distinguished matroid on E \ F
  Rational shift;          // λ
  Subset raised = 0;       // J
  std::vector<Trop> alpha; // α_j for j ∈ J (inf allowed), 0 elsewhere
};

struct ApexDecomposition {
  TropMatrix matrix;  // the decomposed presentation
  std::vector<ApexRow> rows;

  /// Distinguished matroids with their multiplicities.
  std::map<Matroid, int> multiplicities() const {
    std::map<Matroid, int> m;
    for (const auto& r : rows) ++m[r.matroid];
    return m;
  }
};

/// Distinguished matroid of an apex: the initial matroid of mu / F at the
/// negated apex, F being the apex's inf coordinates.
inline Matroid apex_matroid(const ValuatedMatroid& mu, const TropVector& apex) {
  const Subset f = mu.ground() & ~apex.support();
  return initial_matroid(vcontract_set(mu, f), apex.negated_finite()).matroid;
}

/// dapx(mu) from any presentation: the support is padded to the maximal
/// presentation, then every entry is lowered to its exact lower bound in
/// row-major order until nothing moves, then checked against the
/// presentation property, the maximal presentation of the underlying matroid,
/// membership in Trop(mu) and the distinguished multiplicities t(M).
inline ApexDecomposition compute_dapx(const Presentation& p) {
  const ValuatedMatroid& mu = p.mu();
  TropMatrix q = p.matrix();
  const int d = q.rows(), n = q.cols();
  // Entries outside the support but inside the maximal presentation start at
  // a value too large to enter any minimal matching; otherwise they would
  // never be constrained and the sweep could stall on a sparse input.
  const SetSystem grown = maximal_presentation(mu.underlying(), SetSystem{q.support_system()});
  std::optional<Rational> lo, hi;
  for (int i = 0; i < d; ++i) {
    for_each_element(q.row(i).support(), [&](int j) {
      if (!lo || q.at(i, j).value() < *lo) lo = q.at(i, j).value();
    });
  }
  for (const Trop& v : mu.function().values()) {
    if (v.is_finite() && (!hi || v.value() > *hi)) hi = v.value();
  }
  const Trop start(Rational(*hi - (d - 1) * *lo + 1));
  for (int i = 0; i < d; ++i) {
    for_each_element(grown.sets[i] & ~q.row(i).support(), [&](int j) { q = q.with_entry(i, j, start); });
  }
  if (stiefel_function(q) != mu.function()) {
    throw TheoremViolation("dapx reconstruction failed: padding the support changed Stiefel");
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < d; ++i) {
      // Lowering entries of row i leaves the minors on the other rows alone.
      MinorTable minors(q);
      const Subset other_rows = full_set(d) ^ singleton(i);
      for (int j = 0; j < n; ++j) {
        std::optional<Trop> bound;
        for (Subset rest : k_subsets(full_set(n) ^ singleton(j), d - 1)) {
          const Trop& w = minors(other_rows, rest);
          if (w.is_inf()) continue;
          Trop c = mu[rest | singleton(j)] - w;
          bound = bound ? trop_max(*bound, c) : c;
        }
        const Trop b = bound ? *bound : Trop::inf();
        if (b < q.at(i, j)) {
          q = q.with_entry(i, j, b);
          changed = true;
        }
      }
    }
  }

  auto fail = [](const std::string& what) { throw TheoremViolation("dapx reconstruction failed: " + what); };
  if (stiefel_function(q) != mu.function()) fail("not a presentation of mu");
  if (!(SetSystem{q.support_system()} == grown)) fail("support is not the maximal presentation");
  const auto lattice = cyclic_flats(mu.underlying());

  ApexDecomposition out{q, {}};
  for (int i = 0; i < d; ++i) {
    const TropVector& row = q.row(i);
    if (!in_tropical_linear_space(mu, row).ok) fail("row " + std::to_string(i) + " not in Trop(mu)");
    const Subset f = mu.ground() & ~row.support();
    if (!lattice.contains_flat(f)) fail("row " + std::to_string(i) + " is not inf exactly on a cyclic flat");
    out.rows.push_back(ApexRow{i, f, row, apex_matroid(mu, row), Rational(0), 0, std::vector<Trop>(n, Trop(0))});
  }
  for (const auto& [m, count] : out.multiplicities()) {
    if (t_of(m) != count) fail("multiplicity of a distinguished matroid differs from t(M)");
  }
  return out;
}

namespace detail {

/// Perfect matchings of rows onto columns of a boolean admissibility table.
inline std::optional<std::vector<int>> perfect_matching(const std::vector<std::vector<char>>& ok,
                                                        int forced_row = -1, int forced_col = -1) {
  const int d = static_cast<int>(ok.size());
  std::vector<int> owner(d, -1);
  std::vector<char> seen;
  auto usable = [&](int r, int c) {
    if (!ok[r][c]) return false;
    if (r == forced_row) return c == forced_col;
    return c != forced_col || forced_col < 0;
  };
  auto augment = [&](auto&& self, int r) -> bool {
    for (int c = 0; c < d; ++c) {
      if (!usable(r, c) || seen[c]) continue;
      seen[c] = 1;
      if (owner[c] < 0 || self(self, owner[c])) {
        owner[c] = r;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < d; ++r) {
    seen.assign(d, 0);
    if (!augment(augment, r)) return std::nullopt;
  }
  std::vector<int> row_to_col(d);
  for (int c = 0; c < d; ++c) row_to_col[owner[c]] = c;
  return row_to_col;
}

/// Some presentation of m contains the sets in `sub` as members. Searched
/// among sub ∪ R for R a sub-multiset of the maximal presentation of m.
inline bool extends_to_presentation(const Matroid& m, const std::vector<Subset>& sub) {
  const SetSystem maximal = maximal_presentation_by_cyclic_flats(m);
  if (!presents(m, maximal)) throw TheoremViolation("cyclic-flat maximal presentation does not present M");
  const int need = m.rank() - static_cast<int>(sub.size());
  if (need < 0) return false;
  for (Subset pick : k_subsets(full_set(maximal.size()), need)) {
    SetSystem s{sub};
    for_each_element(pick, [&](int k) { s.sets.push_back(maximal.sets[k]); });
    if (presents(m, s)) return true;
  }
  return false;
}

}  // namespace detail

/// Candidate decomposition of `row` against one apex, if admissible:
/// λ = min over supp(row) of row_j - q_j, J = coordinates strictly above λ,
/// and J must be an independent flat of the apex's matroid.
inline std::optional<ApexRow> fit_row_to_apex(const TropVector& row, const ApexRow& apex) {
  const Subset s = row.support();
  if (s == 0 || !is_subset(s, apex.apex_point.support())) return std::nullopt;
  std::optional<Rational> lambda;
  for_each_element(s, [&](int j) {
    Rational diff = row[j].value() - apex.apex_point[j].value();
    if (!lambda || diff < *lambda) lambda = diff;
  });
  ApexRow fit = apex;
  fit.shift = *lambda;
  fit.raised = 0;
  fit.alpha.assign(row.size(), Trop(0));
  for_each_element(apex.apex_point.support(), [&](int j) {
    const Trop diff = row[j] - apex.apex_point[j];
    if (diff > Trop(*lambda)) {
      fit.raised |= singleton(j);
      fit.alpha[j] = diff - Trop(*lambda);
    }
  });
  if (!is_flat(apex.matroid, fit.raised) || !apex.matroid.is_independent(fit.raised)) return std::nullopt;
  return fit;
}

/// The decomposition of a presentation A of mu into blocks A_M, found as a
/// perfect matching of rows onto apices of `apx`. Every row must land on the
/// same distinguished matroid under every perfect matching.
inline ApexDecomposition decompose(const Presentation& a, const ApexDecomposition& apx) {
  if (!is_presentation(apx.matrix, a.mu())) throw InputError("apex decomposition belongs to a different valuated matroid");
  const int d = a.rows();
  std::vector<std::vector<std::optional<ApexRow>>> fits(d, std::vector<std::optional<ApexRow>>(d));
  std::vector<std::vector<char>> ok(d, std::vector<char>(d, 0));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      fits[r][c] = fit_row_to_apex(a.matrix().row(r), apx.rows[c]);
      ok[r][c] = fits[r][c].has_value();
    }
  }
  const auto matching = detail::perfect_matching(ok);
  if (!matching) throw TheoremViolation("not a presentation decomposition: no admissible perfect matching");
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (!ok[r][c] || apx.rows[c].matroid == apx.rows[(*matching)[r]].matroid) continue;
      if (detail::perfect_matching(ok, r, c)) {
        throw TheoremViolation("decomposition is not unique: row " + std::to_string(r) +
                               " fits apices of different distinguished matroids");
      }
    }
  }
  ApexDecomposition out{a.matrix(), {}};
  for (int r = 0; r < d; ++r) out.rows.push_back(*fits[r][(*matching)[r]]);

  std::map<Matroid, std::vector<Subset>> blocks;
  for (const auto& row : out.rows) blocks[row.matroid].push_back(row.matroid.ground() & ~row.raised);
  for (const auto& [m, sets] : blocks) {
    if (!detail::extends_to_presentation(m, sets)) {
      throw TheoremViolation("block supports are not contained in a presentation of their matroid");
    }
  }
  return out;
}

/// Minimality two ways: every row's E(M) \ supp is a hyperplane of its
/// distinguished matroid, and every row support is a cocircuit of the
/// underlying matroid. The two must agree.
inline bool is_minimal(const Presentation& a, const ApexDecomposition& dec) {
  bool by_matroids = true, by_support = true;
  for (int r = 0; r < a.rows(); ++r) {
    const Subset supp = a.matrix().row(r).support();
    const Matroid& m = dec.rows[r].matroid;
    by_matroids = by_matroids && is_hyperplane(m, m.ground() & ~supp);
    by_support = by_support && is_cocircuit(a.mu().underlying(), supp);
  }
  if (by_matroids != by_support) throw TheoremViolation("minimality criteria disagree");
  return by_matroids;
}

inline bool is_minimal(const Presentation& a) { return is_minimal(a, decompose(a, compute_dapx(a))); }

/// A minimal presentation of the same representative, built block by block:
/// each distinguished matroid's maximal presentation (its t apex supports
/// first) is refined to a minimal one, and the apex rows are cut down to the
/// refined supports. Minimal input comes back unchanged unless `keep` is
/// given; then the refinement always starts from dapx and `keep` stays in
/// exactly the rows where dapx has it.
inline Presentation minimize(const Presentation& a, std::optional<int> keep = {}) {
  const ApexDecomposition apx = compute_dapx(a);
  if (!keep && is_minimal(a, decompose(a, apx))) return a;
  std::map<Matroid, std::vector<int>> blocks;
  for (int r = 0; r < a.rows(); ++r) blocks[apx.rows[r].matroid].push_back(r);
  TropMatrix q = apx.matrix;
  for (const auto& [m, rows] : blocks) {
    SetSystem maximal = maximal_presentation_by_cyclic_flats(m);
    // Put t copies of E(M) first; the cyclic flat ∅ contributes them.
    std::stable_partition(maximal.sets.begin(), maximal.sets.end(),
                          [&](Subset s) { return s == m.ground(); });
    if (std::count(maximal.sets.begin(), maximal.sets.end(), m.ground()) < static_cast<long>(rows.size())) {
      throw TheoremViolation("minimize: maximal presentation of M has fewer than t(M) copies of E(M)");
    }
    const auto refined = minimal_refinement(m, maximal, keep);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      q = q.with_row(rows[k], q.row(rows[k]).restricted(refined.sets[k]));
    }
  }
  if (!is_presentation(q, a.mu())) throw TheoremViolation("minimize: refined matrix does not present mu");
  Presentation out(q);
  if (!is_minimal(out)) throw TheoremViolation("minimize: refined matrix is not minimal");
  return out;
}

}  // namespace tropmat
