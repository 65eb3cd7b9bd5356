#pragma once

// Probing whether coordinatewise minima of transversal extensions of one
// valuated matroid are again transversal extensions.
//
// A candidate on E ∪ {*} is realizable iff (A|y) presents it for some minimal
// presentation A of mu and some column y. Minimal presentations are the
// dapx rows cut down to cocircuit supports (one multiset of hyperplanes per
// distinguished matroid), up to row shifts, and the shifts fold into y. So a
// finite search over support patterns decides the question. For each pattern
// y is found twice: by residuation (the least y with every *-minor >= target,
// then an equality check) and by enumerating a tight matching per basis and
// solving the resulting linear system exactly. The two must agree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/extension.hpp"
#include "tropmat/linear.hpp"
#include "tropmat/matrix.hpp"
#include "tropmat/matroid.hpp"
#include "tropmat/presentation.hpp"
#include "tropmat/random.hpp"
#include "tropmat/subset.hpp"
#include "tropmat/trop.hpp"
#include "tropmat/valuated.hpp"

namespace tropmat {

inline constexpr int kLabMaxGround = 5;
inline constexpr int kLabMaxRank = 3;

inline void check_lab_size(int n, int d) {
  if (n > kLabMaxGround || d > kLabMaxRank) {
    throw InputError("lab size cap: need n <= " + std::to_string(kLabMaxGround) + " and d <= " +
                     std::to_string(kLabMaxRank));
  }
}

struct ValuatedCheck {
  bool ok = true;
  std::string reason;   // empty when ok
  PlueckerCheck pluecker;
};

/// Support is the basis set of a matroid and the three-term relations hold.
inline ValuatedCheck check_valuated(const SubsetFunction& f) {
  const auto supp = f.support();
  if (supp.empty()) return {false, "constant inf", {}};
  try {
    Matroid(f.universe(), f.ground(), supp);
  } catch (const InputError&) {
    return {false, "support is not the basis set of a matroid", {}};
  }
  const auto p = check_pluecker(f);
  if (!p.ok) return {false, "three-term Pluecker relation fails", p};
  return {};
}

// ---------------------------------------------------------------------------
// Tight-matching route.

/// An entry of a realizability pattern: fixed, or the unknown with the given
/// index (always finite).
struct PatternCell {
  Trop fixed;
  int unknown = -1;
};

/// target = Stiefel of a d x n matrix whose cells are fixed values or finite
/// unknowns.
struct RealizabilityProblem {
  int rows = 0;
  int cols = 0;
  int unknowns = 0;
  std::vector<std::vector<PatternCell>> cells;
  SubsetFunction target;
};

struct TightMatchingResult {
  std::optional<std::vector<Rational>> values;  // unknowns, when feasible
  long long assignments = 0;                    // search nodes visited
};

namespace detail {

// Weights of every matching of rows [d] onto `cols`, as affine forms in the
// unknowns; matchings through an inf cell are skipped. Only the smallest
// constant per coefficient vector is kept (the others can never be tight
// without it being strictly smaller).
inline std::vector<Affine> matching_forms(const RealizabilityProblem& p, Subset cols) {
  auto c = elements(cols);
  std::vector<int> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<Rational>, Rational> best;
  do {
    Affine w(p.unknowns);
    bool finite = true;
    for (int i = 0; i < p.rows && finite; ++i) {
      const PatternCell& cell = p.cells[i][c[perm[i]]];
      if (cell.unknown >= 0) {
        w.coef[cell.unknown] += 1;
      } else if (cell.fixed.is_inf()) {
        finite = false;
      } else {
        w.constant += cell.fixed.value();
      }
    }
    if (!finite) continue;
    auto [it, fresh] = best.emplace(w.coef, w.constant);
    if (!fresh && w.constant < it->second) it->second = w.constant;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Affine> out;
  for (const auto& [coef, constant] : best) {
    Affine a(p.unknowns);
    a.coef = coef;
    a.constant = constant;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

/// Decides the problem by choosing, for every basis with finite target, one
/// matching that attains it (an equation) while all matchings stay >= target
/// (inequalities). Infinite targets forbid every finite matching.
inline TightMatchingResult solve_by_tight_matchings(const RealizabilityProblem& p) {
  TightMatchingResult result;
  LinearSystem base;
  base.nvars = p.unknowns;
  struct Choice {
    std::vector<Affine> tight;  // candidate equations (form - target)
  };
  std::vector<Choice> choices;
  for (Subset b : k_subsets(full_set(p.cols), p.rows)) {
    const auto forms = detail::matching_forms(p, b);
    const Trop& t = p.target[b];
    if (t.is_inf()) {
      if (!forms.empty()) return result;
      continue;
    }
    if (forms.empty()) return result;
    Choice c;
    bool settled = false;
    for (const auto& f : forms) {
      Affine g = f;
      g.constant -= t.value();
      if (g.is_constant()) {
        if (g.constant < 0) return result;
        settled = settled || g.constant == 0;
        continue;
      }
      base.inequalities.push_back(g);
      c.tight.push_back(std::move(g));
    }
    // A constant matching equal to the target already attains it.
    if (!settled) choices.push_back(std::move(c));
  }
  std::sort(choices.begin(), choices.end(),
            [](const Choice& a, const Choice& b) { return a.tight.size() < b.tight.size(); });

  LinearSystem sys = base;
  auto dfs = [&](auto&& self, std::size_t k) -> bool {
    ++result.assignments;
    auto feasible = solve(sys);
    if (!feasible) return false;
    if (k == choices.size()) {
      result.values = std::move(feasible);
      return true;
    }
    for (const auto& eq : choices[k].tight) {
      sys.equations.push_back(eq);
      if (self(self, k + 1)) return true;
      sys.equations.pop_back();
    }
    return false;
  };
  dfs(dfs, 0);
  return result;
}

/// Problem "find y with Stiefel(A|y) = target", y unknown where `open` is
/// set and inf elsewhere.
inline RealizabilityProblem column_problem(const TropMatrix& a, const SubsetFunction& target,
                                           const std::vector<bool>& open) {
  RealizabilityProblem p{a.rows(), a.cols() + 1, 0, {}, target};
  p.cells.assign(a.rows(), std::vector<PatternCell>(a.cols() + 1));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) p.cells[i][j].fixed = a.at(i, j);
    if (open[i]) p.cells[i][a.cols()].unknown = p.unknowns++;
  }
  return p;
}

/// Some y with Stiefel(A|y) = target via the tight-matching route, trying
/// every support of y.
inline std::optional<ExtensionColumn> column_by_tight_matchings(const TropMatrix& a, const SubsetFunction& target,
                                                                long long* nodes = nullptr) {
  const int d = a.rows();
  for (Subset s : all_subsets(full_set(d))) {
    std::vector<bool> open(d);
    for (int i = 0; i < d; ++i) open[i] = contains(s, i);
    const auto p = column_problem(a, target, open);
    const auto r = solve_by_tight_matchings(p);
    if (nodes) *nodes += r.assignments;
    if (!r.values) continue;
    ExtensionColumn y(d);
    for (int i = 0; i < d; ++i) {
      y[i] = open[i] ? Trop((*r.values)[p.cells[i][a.cols()].unknown]) : Trop::inf();
    }
    return y;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Residuation route.

/// The least y with every *-minor of (A|y) >= target, if it attains equality
/// everywhere (and the *-free minors already match).
inline std::optional<ExtensionColumn> column_by_residuation(const TropMatrix& a, const SubsetFunction& target) {
  const int d = a.rows(), n = a.cols();
  MinorTable minors(a);
  for (Subset b : k_subsets(full_set(n), d)) {
    if (minors(full_set(d), b) != target[b]) return std::nullopt;
  }
  ExtensionColumn y(d);
  for (int i = 0; i < d; ++i) {
    std::optional<Trop> lo;
    for (Subset j : k_subsets(full_set(n), d - 1)) {
      const Trop& c = minors(full_set(d) ^ singleton(i), j);
      if (c.is_inf()) continue;
      const Trop& t = target[j | singleton(n)];
      const Trop need = t.is_inf() ? Trop::inf() : t - c;
      lo = lo ? trop_max(*lo, need) : need;
    }
    y[i] = lo ? *lo : Trop::inf();
  }
  for (Subset j : k_subsets(full_set(n), d - 1)) {
    Trop v;
    for (int i = 0; i < d; ++i) v = trop_add(v, minors(full_set(d) ^ singleton(i), j) + y[i]);
    if (v != target[j | singleton(n)]) return std::nullopt;
  }
  return y;
}

// ---------------------------------------------------------------------------
// Minimal support patterns.

/// Every minimal presentation of mu up to row shifts and row order: the
/// dapx rows restricted to E(M) \ H, one multiset of hyperplanes H of M per
/// distinguished matroid M. Only restrictions that present mu are kept.
inline std::vector<TropMatrix> minimal_presentations(const Presentation& base) {
  const ApexDecomposition apx = compute_dapx(base);
  const Matroid& m = base.mu().underlying();
  std::vector<std::pair<Matroid, std::vector<int>>> blocks;
  {
    std::map<Matroid, std::vector<int>> by;
    for (int r = 0; r < base.rows(); ++r) by[apx.rows[r].matroid].push_back(r);
    blocks.assign(by.begin(), by.end());
  }
  // Per block: every non-decreasing sequence of hyperplane indices.
  std::vector<std::vector<std::vector<Subset>>> options;
  for (const auto& [bm, rows] : blocks) {
    const auto hs = hyperplanes(bm);
    std::vector<std::vector<Subset>> seqs;
    std::vector<int> idx(rows.size(), 0);
    for (;;) {
      std::vector<Subset> supports;
      bool cocircuits = true;
      for (int k : idx) {
        const Subset s = bm.ground() & ~hs[k];
        cocircuits = cocircuits && is_cocircuit(m, s);
        supports.push_back(s);
      }
      if (cocircuits) seqs.push_back(std::move(supports));
      int pos = static_cast<int>(idx.size()) - 1;
      while (pos >= 0 && idx[pos] + 1 == static_cast<int>(hs.size())) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (std::size_t q = pos + 1; q < idx.size(); ++q) idx[q] = idx[pos];
    }
    options.push_back(std::move(seqs));
  }
  std::vector<TropMatrix> out;
  std::vector<std::size_t> pick(blocks.size(), 0);
  if (std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) return out;
  for (;;) {
    TropMatrix q = apx.matrix;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& rows = blocks[b].second;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        q = q.with_row(rows[k], q.row(rows[k]).restricted(options[b][pick[b]][k]));
      }
    }
    if (is_presentation(q, base.mu())) out.push_back(q);
    std::size_t b = 0;
    while (b < blocks.size() && ++pick[b] == options[b].size()) pick[b++] = 0;
    if (b == blocks.size()) break;
  }
  return out;
}

enum class Realizability { kRealizable, kNotRealizable };

struct RealizabilityVerdict {
  Realizability kind = Realizability::kNotRealizable;
  std::optional<TropMatrix> witness;  // (A|y)
  int patterns = 0;                   // minimal presentations tried
  long long tight_nodes = 0;          // search nodes of the tight-matching route
};

/// Is `candidate` (on E ∪ {*}, * last) equal to Stiefel(A|y) for some
/// presentation A of mu = Stiefel(base) and some y? Both routes are run on
/// every pattern and must agree; a realizable verdict carries a witness that
/// has been re-checked minor by minor.
inline RealizabilityVerdict is_transversal_extension(const SubsetFunction& candidate, const Presentation& base) {
  const int n = base.cols(), d = base.rows();
  check_lab_size(n, d);
  if (candidate.universe() != n + 1 || candidate.rank() != d || candidate.ground() != full_set(n + 1)) {
    throw InputError("candidate must live on E plus one new element, with the rank of mu");
  }
  if (delete_star(candidate) != base.mu().function()) {
    throw InputError("candidate does not restrict to mu away from *");
  }
  bool star_in_every_basis = true, any_basis = false;
  for (Subset b : candidate.support()) {
    any_basis = true;
    star_in_every_basis = star_in_every_basis && contains(b, n);
  }
  if (any_basis && star_in_every_basis) throw InputError("rank-increasing extension out of scope");

  RealizabilityVerdict v;
  for (const TropMatrix& a : minimal_presentations(base)) {
    ++v.patterns;
    const auto by_residuation = column_by_residuation(a, candidate);
    const auto by_matchings = column_by_tight_matchings(a, candidate, &v.tight_nodes);
    if (by_residuation.has_value() != by_matchings.has_value()) {
      throw TheoremViolation("realizability routes disagree");
    }
    if (!by_residuation) continue;
    const TropMatrix w = a.append_column(*by_residuation);
    if (stiefel_function(w) != candidate || stiefel_function(a.append_column(*by_matchings)) != candidate) {
      throw TheoremViolation("realizability witness does not reproduce the candidate");
    }
    v.kind = Realizability::kRealizable;
    v.witness = w;
    return v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Search.

struct LabReport {
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0, d = 0;
  TropMatrix base;           // a presentation of mu
  SubsetFunction mu;
  TropMatrix first;          // minimal presentation of the first extension
  ExtensionColumn x;
  TropMatrix second;
  ExtensionColumn y;
  bool same_presentation = false;
  SubsetFunction candidate;  // min of the two extensions
  ValuatedCheck valuated;
  std::optional<RealizabilityVerdict> transversal;  // when valuated
  bool flagged = false;      // valuated but not transversal, or not valuated
};

namespace detail {

// Shift rows by values summing to zero, keeping Stiefel unchanged.
inline TropMatrix shuffled_shifts(std::mt19937_64& rng, const TropMatrix& a) {
  const auto grid = default_value_grid();
  TropMatrix out = a;
  Rational total(0);
  for (int i = 0; i + 1 < a.rows(); ++i) {
    const Rational s = grid[uniform_index(rng, grid.size())];
    total += s;
    out = out.with_row(i, out.row(i).shifted(Trop(s)));
  }
  const int last = a.rows() - 1;
  return out.with_row(last, out.row(last).shifted(Trop(Rational(-total))));
}

}  // namespace detail

/// Evaluate the min of two given extensions of mu = Stiefel(base).
inline LabReport lab_instance(const Presentation& base, const TropMatrix& first, const ExtensionColumn& x,
                              const TropMatrix& second, const ExtensionColumn& y) {
  check_lab_size(base.cols(), base.rows());
  const Presentation p1(first), p2(second);
  if (!(p1.mu() == base.mu()) || !(p2.mu() == base.mu())) {
    throw InputError("extension presentations must present the same representative");
  }
  const NormalizedExtension e1 = extend(p1, x), e2 = extend(p2, y);
  LabReport r{0, 0, base.cols(), base.rows(), base.matrix(), base.mu().function(), first, x, second, y,
              first == second, min_of_extensions(e1, e2), {}, std::nullopt, false};
  r.valuated = check_valuated(r.candidate);
  if (r.valuated.ok) r.transversal = is_transversal_extension(r.candidate, base);
  r.flagged = !r.valuated.ok || r.transversal->kind == Realizability::kNotRealizable;
  if (r.flagged && r.same_presentation) {
    throw TheoremViolation("min of two extensions from one presentation was flagged");
  }
  return r;
}

/// One trial: a random transversal mu, two minimal presentations (the
/// minimized random one and a random pattern with random row shifts),
/// random columns, and the verdicts on the min.
inline LabReport lab_trial(int n, int d, std::uint64_t seed, int trial) {
  check_lab_size(n, d);
  if (d < 1 || d > n) throw InputError("lab needs 1 <= d <= n");
  auto rng = instance_rng(seed, trial);
  CorpusSpec spec;
  spec.n = n;
  spec.d = d;
  const Presentation base(random_presentation_matrix(rng, spec));
  const Presentation first = minimize(base);
  const auto patterns = minimal_presentations(base);
  if (patterns.empty()) throw TheoremViolation("no minimal presentation found for a transversal mu");
  const TropMatrix second = detail::shuffled_shifts(rng, patterns[uniform_index(rng, patterns.size())]);
  const ExtensionColumn x = random_column(rng, d), y = random_column(rng, d);
  LabReport r = lab_instance(base, first.matrix(), x, second, y);
  r.trial = trial;
  r.seed = seed;
  return r;
}

inline std::vector<LabReport> open_question_search(int n, int d, int trials, std::uint64_t seed) {
  check_lab_size(n, d);
  std::vector<LabReport> out;
  out.reserve(trials);
  for (int t = 0; t < trials; ++t) out.push_back(lab_trial(n, d, seed, t));
  return out;
}

/// The pinned instance: mu trivial on U_{2,3}, min of mu^{1,1} (from the
/// minimal presentation (inf 0 0 / 0 inf 0)) and mu^{2,1}.
inline LabReport lab_pinned_u23() {
  auto t = [](const char* s) { return parse_trop(s); };
  const TropMatrix base({TropVector({t("0"), t("0"), t("inf")}), TropVector({t("0"), t("inf"), t("0")})});
  // mu^{1,1}: (inf 0 0 | 1), (0 inf 0 | 0) by present_extension_minimally.
  const TropMatrix first({TropVector({t("inf"), t("0"), t("0")}), TropVector({t("0"), t("inf"), t("0")})});
  // mu^{2,1} from the base presentation with x = (0, 1).
  return lab_instance(Presentation(base), first, {t("1"), t("0")}, base, {t("0"), t("1")});
}

}  // namespace tropmat
