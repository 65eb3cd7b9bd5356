#pragma once

// Valuated matroids as representative functions on d-subsets.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/matrix.hpp"
#include "tropmat/matroid.hpp"
#include "tropmat/subset.hpp"
#include "tropmat/trop.hpp"

namespace tropmat {

/// A total function from the d-subsets of `ground` to Q ∪ {inf}. No axioms.
class SubsetFunction {
 public:
  SubsetFunction() = default;
  /// Entries missing from `values` are inf.
  SubsetFunction(int universe, Subset ground, int d, const std::map<Subset, Trop>& values)
      : n_(universe), ground_(ground), d_(d) {
    check_ground_size(universe);
    if (!is_subset(ground, full_set(universe))) throw InputError("ground set exceeds universe");
    if (d < 0 || d > size_of(ground)) throw InputError("rank outside [0, |E|]");
    values_.assign(static_cast<std::size_t>(binomial(size_of(ground), d)), Trop::inf());
    for (const auto& [s, v] : values) {
      if (size_of(s) != d || !is_subset(s, ground)) throw InputError("value given on a set that is not a d-subset of E");
      values_[colex_rank(s, ground_)] = v;
    }
  }

  /// Like the map constructor but every d-subset must be present.
  static SubsetFunction complete(int universe, Subset ground, int d, const std::map<Subset, Trop>& values) {
    SubsetFunction f(universe, ground, d, values);
    for (Subset s : f.domain()) {
      if (!values.count(s)) throw InputError("missing value on a d-subset");
    }
    return f;
  }

  int universe() const { return n_; }
  Subset ground() const { return ground_; }
  int rank() const { return d_; }

  /// The d-subsets of E in colex order (the storage order).
  std::vector<Subset> domain() const { return k_subsets(ground_, d_); }

  const Trop& operator[](Subset s) const {
    if (size_of(s) != d_ || !is_subset(s, ground_)) throw InputError("not a d-subset of the ground set");
    return values_[colex_rank(s, ground_)];
  }

  const std::vector<Trop>& values() const { return values_; }

  std::vector<Subset> support() const {
    std::vector<Subset> out;
    auto dom = domain();
    for (std::size_t k = 0; k < dom.size(); ++k) {
      if (values_[k].is_finite()) out.push_back(dom[k]);
    }
    return out;
  }

  std::map<Subset, Trop> to_map() const {
    std::map<Subset, Trop> m;
    auto dom = domain();
    for (std::size_t k = 0; k < dom.size(); ++k) m.emplace(dom[k], values_[k]);
    return m;
  }

  SubsetFunction shifted(const Trop& t) const {
    SubsetFunction f = *this;
    for (auto& v : f.values_) v = v + t;
    return f;
  }

  friend bool operator==(const SubsetFunction& a, const SubsetFunction& b) {
    return a.n_ == b.n_ && a.ground_ == b.ground_ && a.d_ == b.d_ && a.values_ == b.values_;
  }

 private:
  int n_ = 0;
  Subset ground_ = 0;
  int d_ = 0;
  std::vector<Trop> values_;
};

/// Coordinatewise min of two functions on the same domain.
inline SubsetFunction trop_add(const SubsetFunction& a, const SubsetFunction& b) {
  if (a.universe() != b.universe() || a.ground() != b.ground() || a.rank() != b.rank()) {
    throw InputError("functions on different domains");
  }
  std::map<Subset, Trop> m;
  for (Subset s : a.domain()) m.emplace(s, trop_add(a[s], b[s]));
  return SubsetFunction(a.universe(), a.ground(), a.rank(), m);
}

struct PlueckerCheck {
  bool ok = true;
  Subset base = 0;  // S
  Subset quad = 0;  // {i, j, k, l}
};

/// Three-term relations: for every S of size d-2 and i<j<k<l outside S the
/// minimum of the three products is attained at least twice (an all-inf
/// relation counts as attained).
inline PlueckerCheck check_pluecker(const SubsetFunction& f) {
  const int d = f.rank();
  if (d < 2) return {};
  for (Subset s : k_subsets(f.ground(), d - 2)) {
    for (Subset q : k_subsets(f.ground() & ~s, 4)) {
      const auto e = elements(q);
      auto mu = [&](int a, int b) -> const Trop& { return f[s | singleton(e[a]) | singleton(e[b])]; };
      const Trop t[3] = {mu(0, 1) + mu(2, 3), mu(0, 2) + mu(1, 3), mu(0, 3) + mu(1, 2)};
      const Trop m = trop_add(trop_add(t[0], t[1]), t[2]);
      if (m.is_inf()) continue;
      int hits = (t[0] == m) + (t[1] == m) + (t[2] == m);
      if (hits < 2) return {false, s, q};
    }
  }
  return {};
}

/// Map form; every d-subset of {0..n-1} must carry a value.
inline PlueckerCheck check_pluecker(int n, int d, const std::map<Subset, Trop>& values) {
  return check_pluecker(SubsetFunction::complete(n, full_set(n), d, values));
}

/// A representative function satisfying the valuated matroid axioms.
class ValuatedMatroid {
 public:
  explicit ValuatedMatroid(SubsetFunction f) : f_(std::move(f)) {
    auto supp = f_.support();
    if (supp.empty()) throw InputError("constant-inf function is not a valuated matroid");
    underlying_ = std::make_shared<const Matroid>(f_.universe(), f_.ground(), std::move(supp));
    if (auto p = check_pluecker(f_); !p.ok) throw InputError("three-term Pluecker relation fails");
  }

  ValuatedMatroid(int universe, Subset ground, int d, const std::map<Subset, Trop>& values)
      : ValuatedMatroid(SubsetFunction(universe, ground, d, values)) {}

  /// Trivial valuation (0 on every basis) over m.
  static ValuatedMatroid trivial(const Matroid& m) {
    std::map<Subset, Trop> v;
    for (Subset b : m.bases()) v.emplace(b, Trop(0));
    return ValuatedMatroid(m.universe(), m.ground(), m.rank(), v);
  }

  int universe() const { return f_.universe(); }
  Subset ground() const { return f_.ground(); }
  int rank() const { return f_.rank(); }
  const Trop& operator[](Subset s) const { return f_[s]; }
  const SubsetFunction& function() const { return f_; }
  const Matroid& underlying() const { return *underlying_; }

  ValuatedMatroid shifted(const Trop& t) const { return ValuatedMatroid(f_.shifted(t)); }

  friend bool operator==(const ValuatedMatroid& a, const ValuatedMatroid& b) { return a.f_ == b.f_; }

 private:
  SubsetFunction f_;
  std::shared_ptr<const Matroid> underlying_;
};

inline const Matroid& underlying(const ValuatedMatroid& mu) { return mu.underlying(); }

/// mu \ F. Requires E \ F spanning in the underlying matroid.
inline ValuatedMatroid vdelete(const ValuatedMatroid& mu, Subset f) {
  f &= mu.ground();
  const Subset rest = mu.ground() & ~f;
  if (mu.underlying().rank(rest) != mu.rank()) throw InputError("deletion: E \\ F is not spanning");
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(rest, mu.rank())) v.emplace(b, mu[b]);
  return ValuatedMatroid(mu.universe(), rest, mu.rank(), v);
}

/// mu / F : B -> mu(B ∪ F). Requires F independent in the underlying matroid.
inline ValuatedMatroid vcontract(const ValuatedMatroid& mu, Subset f) {
  if (!mu.underlying().is_independent(f)) throw InputError("contraction: F is not independent");
  const Subset rest = mu.ground() & ~f;
  const int r = mu.rank() - size_of(f);
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(rest, r)) v.emplace(b, mu[b | f]);
  return ValuatedMatroid(mu.universe(), rest, r, v);
}

/// Contraction by an arbitrary set: contract its lexicographically least
/// basis J, then delete F \ J (loops after contracting J). The representative
/// depends on J only through a global shift.
inline ValuatedMatroid vcontract_set(const ValuatedMatroid& mu, Subset f) {
  f &= mu.ground();
  const Subset j = lex_least_basis(mu.underlying(), f);
  const ValuatedMatroid c = vcontract(mu, j);
  return vdelete(c, f & ~j);
}

struct MembershipCheck {
  bool ok = true;
  Subset witness = 0;  // a (d+1)-set whose minimum is attained once
};

/// x ∈ Trop(mu): for each (d+1)-subset T of E the minimum over i ∈ T of
/// mu_{T-i} + x_i is attained at least twice (or is inf).
inline MembershipCheck in_tropical_linear_space(const ValuatedMatroid& mu, const TropVector& x) {
  if (x.size() != mu.universe()) throw InputError("point has the wrong length");
  for (Subset t : k_subsets(mu.ground(), mu.rank() + 1)) {
    Trop best;
    int hits = 0;
    for_each_element(t, [&](int i) {
      Trop term = mu[t ^ singleton(i)] + x[i];
      if (term < best) {
        best = std::move(term);
        hits = 1;
      } else if (term == best) {
        ++hits;
      }
    });
    if (best.is_finite() && hits < 2) return {false, t};
  }
  return {};
}

struct InitialMatroidResult {
  Matroid matroid;
  TropVector point;
  Trop min_value;
};

/// Bases minimizing mu_B + sum_{i in B} x_i. x must be finite on E.
inline InitialMatroidResult initial_matroid(const ValuatedMatroid& mu, const TropVector& x) {
  if (x.size() != mu.universe()) throw InputError("point has the wrong length");
  if (!is_subset(mu.ground(), x.support())) throw InputError("initial matroid needs a finite point");
  Trop best;
  std::vector<Subset> argmin;
  for (Subset b : mu.underlying().bases()) {
    Trop w = mu[b];
    for_each_element(b, [&](int i) { w += x[i]; });
    if (w < best) {
      best = w;
      argmin.assign(1, b);
    } else if (w == best) {
      argmin.push_back(b);
    }
  }
  return {Matroid(mu.universe(), mu.ground(), std::move(argmin)), x, best};
}

inline bool representatives_equal(const ValuatedMatroid& a, const ValuatedMatroid& b) { return a == b; }

/// Some finite t with b = a + t.
inline std::optional<Rational> equivalence_shift(const SubsetFunction& a, const SubsetFunction& b) {
  if (a.universe() != b.universe() || a.ground() != b.ground() || a.rank() != b.rank()) return std::nullopt;
  std::optional<Rational> t;
  const auto& va = a.values();
  const auto& vb = b.values();
  for (std::size_t k = 0; k < va.size(); ++k) {
    if (va[k].is_inf() != vb[k].is_inf()) return std::nullopt;
    if (va[k].is_inf()) continue;
    Rational diff = vb[k].value() - va[k].value();
    if (!t) {
      t = diff;
    } else if (*t != diff) {
      return std::nullopt;
    }
  }
  if (!t) t = Rational(0);
  return t;
}

inline bool equivalent(const ValuatedMatroid& a, const ValuatedMatroid& b) {
  return equivalence_shift(a.function(), b.function()).has_value();
}

/// The representative of mu that agrees with `ref` on the basis b0.
inline ValuatedMatroid normalized_to(const ValuatedMatroid& mu, const ValuatedMatroid& ref, Subset b0) {
  if (mu[b0].is_inf() || ref[b0].is_inf()) throw InputError("normalization basis must be finite in both");
  return mu.shifted(ref[b0] - mu[b0]);
}

}  // namespace tropmat
