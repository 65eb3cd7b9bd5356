#pragma once

// Matroids given by explicit basis lists, and set-system presentations of
// transversal matroids. Everything is brute force over subsets of a ground
// set of at most kMaxGround elements.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/subset.hpp"

namespace tropmat {

/// A matroid on `ground` ⊆ {0..universe-1}. Elements of the universe outside
/// `ground` are simply not part of the matroid.
class Matroid {
 public:
  /// Validates the basis exchange axiom.
  Matroid(int universe, Subset ground, std::vector<Subset> bases) : n_(universe), ground_(ground) {
    check_ground_size(universe);
    if (!is_subset(ground, full_set(universe))) throw InputError("ground set exceeds universe");
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    if (bases.empty()) throw InputError("a matroid needs at least one basis");
    d_ = size_of(bases.front());
    for (Subset b : bases) {
      if (size_of(b) != d_) throw InputError("bases of different sizes");
      if (!is_subset(b, ground_)) throw InputError("basis outside the ground set");
    }
    bases_ = std::move(bases);
    build_tables();
    check_exchange();
  }

  Matroid(int universe, std::vector<Subset> bases)
      : Matroid(universe, full_set(universe), std::move(bases)) {}

  int universe() const { return n_; }
  Subset ground() const { return ground_; }
  int rank() const { return d_; }
  const std::vector<Subset>& bases() const { return bases_; }

  bool is_basis(Subset s) const { return is_subset(s, ground_) && size_of(s) == d_ && rank(s) == d_; }
  int rank(Subset s) const { return (*rank_)[s & ground_]; }
  bool is_independent(Subset s) const { return is_subset(s, ground_) && rank(s) == size_of(s); }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.n_ == b.n_ && a.ground_ == b.ground_ && a.bases_ == b.bases_;
  }
  friend bool operator<(const Matroid& a, const Matroid& b) {
    if (a.ground_ != b.ground_) return a.ground_ < b.ground_;
    return a.bases_ < b.bases_;
  }

 private:
  void build_tables() {
    const std::size_t size = std::size_t{1} << n_;
    std::vector<std::uint8_t> indep(size, 0);
    for (Subset b : bases_) indep[b] = 1;
    for (std::size_t s = size; s-- > 0;) {
      const Subset set = static_cast<Subset>(s);
      if (indep[s] || !is_subset(set, ground_)) continue;
      for (Subset rest = ground_ & ~set; rest != 0; rest &= rest - 1) {
        if (indep[set | singleton(lowest(rest))]) {
          indep[s] = 1;
          break;
        }
      }
    }
    auto rank = std::make_shared<std::vector<std::uint8_t>>(size, 0);
    for (std::size_t s = 1; s < size; ++s) {
      const Subset set = static_cast<Subset>(s);
      if (!is_subset(set, ground_)) continue;
      if (indep[s]) {
        (*rank)[s] = static_cast<std::uint8_t>(size_of(set));
        continue;
      }
      std::uint8_t best = 0;
      for_each_element(set, [&](int e) { best = std::max(best, (*rank)[set ^ singleton(e)]); });
      (*rank)[s] = best;
    }
    rank_ = std::move(rank);
  }

  // For B1, e in B1 let S = {f : B1 - e + f is a basis}. Exchange with every
  // B2 not containing e needs B2 to meet S, i.e. no basis inside E - S - e.
  void check_exchange() const {
    for (Subset b1 : bases_) {
      for_each_element(b1, [&](int e) {
        Subset swaps = 0;
        for_each_element(ground_ & ~b1, [&](int f) {
          if (is_basis((b1 ^ singleton(e)) | singleton(f))) swaps |= singleton(f);
        });
        if (rank(ground_ & ~(swaps | singleton(e))) == d_) throw InputError("basis exchange axiom fails");
      });
    }
  }

  int n_ = 0;
  Subset ground_ = 0;
  int d_ = 0;
  std::vector<Subset> bases_;
  std::shared_ptr<const std::vector<std::uint8_t>> rank_;
};

/// U_{r,m} on {0..m-1}.
inline Matroid uniform_matroid(int r, int m) { return Matroid(m, k_subsets(full_set(m), r)); }

inline int rank(const Matroid& m, Subset s) { return m.rank(s); }

inline int corank(const Matroid& m, Subset s) { return m.rank() - m.rank(s); }

inline Subset closure(const Matroid& m, Subset s) {
  const int r = m.rank(s);
  Subset cl = s & m.ground();
  for_each_element(m.ground() & ~s, [&](int e) {
    if (m.rank(s | singleton(e)) == r) cl |= singleton(e);
  });
  return cl;
}

inline bool is_flat(const Matroid& m, Subset s) { return is_subset(s, m.ground()) && closure(m, s) == s; }

inline Subset loops(const Matroid& m) { return closure(m, 0); }

inline Subset coloops(const Matroid& m) {
  Subset c = m.ground();
  for (Subset b : m.bases()) c &= b;
  return c;
}

namespace detail {
inline void sort_lex(std::vector<Subset>& v) { std::sort(v.begin(), v.end(), lex_less); }
}  // namespace detail

inline std::vector<Subset> flats(const Matroid& m) {
  std::vector<Subset> out;
  for (Subset s : all_subsets(m.ground())) {
    if (closure(m, s) == s) out.push_back(s);
  }
  detail::sort_lex(out);
  return out;
}

inline std::vector<Subset> hyperplanes(const Matroid& m) {
  std::vector<Subset> out;
  for (Subset f : flats(m)) {
    if (m.rank(f) == m.rank() - 1) out.push_back(f);
  }
  return out;
}

inline std::vector<Subset> cocircuits(const Matroid& m) {
  std::vector<Subset> out;
  for (Subset h : hyperplanes(m)) out.push_back(m.ground() & ~h);
  detail::sort_lex(out);
  return out;
}

inline bool is_hyperplane(const Matroid& m, Subset s) {
  return is_flat(m, s) && m.rank(s) == m.rank() - 1;
}

inline bool is_cocircuit(const Matroid& m, Subset s) {
  return is_subset(s, m.ground()) && is_hyperplane(m, m.ground() & ~s);
}

inline std::vector<Subset> circuits(const Matroid& m) {
  std::vector<Subset> out;
  for (Subset s : all_subsets(m.ground())) {
    if (s == 0 || m.is_independent(s)) continue;
    bool minimal = true;
    for_each_element(s, [&](int e) { minimal = minimal && m.is_independent(s ^ singleton(e)); });
    if (minimal) out.push_back(s);
  }
  detail::sort_lex(out);
  return out;
}

/// Lexicographically least maximal independent subset of s.
inline Subset lex_least_basis(const Matroid& m, Subset s) {
  Subset b = 0;
  for_each_element(s & m.ground(), [&](int e) {
    if (m.is_independent(b | singleton(e))) b |= singleton(e);
  });
  return b;
}

/// Cyclic flats, listed so that containment implies earlier position, with
/// the Möbius function from the least cyclic flat (the closure of the empty set).
struct CyclicFlatLattice {
  std::vector<Subset> flats;
  std::vector<long long> moebius;

  Subset bottom() const { return flats.front(); }
  bool contains_flat(Subset f) const { return std::find(flats.begin(), flats.end(), f) != flats.end(); }
};

inline CyclicFlatLattice cyclic_flats(const Matroid& m) {
  CyclicFlatLattice lat;
  for (Subset f : flats(m)) {
    bool cyclic = true;
    const int r = m.rank(f);
    for_each_element(f, [&](int e) { cyclic = cyclic && m.rank(f ^ singleton(e)) == r; });
    if (cyclic) lat.flats.push_back(f);
  }
  std::stable_sort(lat.flats.begin(), lat.flats.end(),
                   [](Subset a, Subset b) { return size_of(a) < size_of(b); });
  lat.moebius.assign(lat.flats.size(), 0);
  for (std::size_t k = 0; k < lat.flats.size(); ++k) {
    if (k == 0) {
      lat.moebius[k] = 1;
      continue;
    }
    long long sum = 0;
    for (std::size_t g = 0; g < k; ++g) {
      if (is_subset(lat.flats[g], lat.flats[k])) sum += lat.moebius[g];
    }
    lat.moebius[k] = -sum;
  }
  return lat;
}

/// Sum over cyclic flats F of Moebius(∅, F) * cork(F). Zero when M has loops
/// (the lattice then has no ∅).
inline long long t_of(const Matroid& m) {
  if (loops(m) != 0) return 0;
  const auto lat = cyclic_flats(m);
  long long t = 0;
  for (std::size_t k = 0; k < lat.flats.size(); ++k) t += lat.moebius[k] * corank(m, lat.flats[k]);
  if (t < 0) throw TheoremViolation("t(M) < 0: input not in the guaranteed regime");
  return t;
}

inline bool is_connected(const Matroid& m) {
  const Subset g = m.ground();
  if (g == 0) return true;
  const int top = lowest(g);
  for (Subset s : all_subsets(g)) {
    if (!contains(s, top) || s == g) continue;
    if (m.rank(s) + m.rank(g & ~s) == m.rank()) return false;
  }
  return true;
}

/// M \ S. Requires ground \ S spanning.
inline Matroid deletion(const Matroid& m, Subset s) {
  s &= m.ground();
  if (m.rank(m.ground() & ~s) != m.rank()) throw InputError("deletion: complement of S is not spanning");
  std::vector<Subset> b;
  for (Subset x : m.bases()) {
    if ((x & s) == 0) b.push_back(x);
  }
  return Matroid(m.universe(), m.ground() & ~s, std::move(b));
}

/// M / S. Requires S independent.
inline Matroid contraction(const Matroid& m, Subset s) {
  if (!m.is_independent(s)) throw InputError("contraction: S is not independent");
  std::vector<Subset> b;
  for (Subset x : m.bases()) {
    if (is_subset(s, x)) b.push_back(x & ~s);
  }
  return Matroid(m.universe(), m.ground() & ~s, std::move(b));
}

/// M / S for arbitrary S ⊆ ground: contract a basis of S, drop the rest.
inline Matroid contract_set(const Matroid& m, Subset s) {
  s &= m.ground();
  const Subset j = lex_least_basis(m, s);
  std::vector<Subset> b;
  for (Subset x : m.bases()) {
    if (is_subset(j, x)) b.push_back(x & ~j);
  }
  return Matroid(m.universe(), m.ground() & ~s, std::move(b));
}

/// M | S.
inline Matroid restriction(const Matroid& m, Subset s) {
  s &= m.ground();
  std::vector<Subset> b;
  for (Subset x : k_subsets(s, m.rank(s))) {
    if (m.is_independent(x)) b.push_back(x);
  }
  return Matroid(m.universe(), s, std::move(b));
}

/// M ⊕ N with N's universe placed after M's.
inline Matroid direct_sum(const Matroid& m, const Matroid& n) {
  const int shift = m.universe();
  std::vector<Subset> b;
  for (Subset x : m.bases()) {
    for (Subset y : n.bases()) b.push_back(x | (y << shift));
  }
  return Matroid(m.universe() + n.universe(), m.ground() | (n.ground() << shift), std::move(b));
}

/// M ≤ N in the weak order (bases of M are bases of N, at equal rank).
inline bool weak_order_leq(const Matroid& m, const Matroid& n) {
  if (m.universe() != n.universe() || m.ground() != n.ground() || m.rank() != n.rank()) {
    throw InputError("weak order needs equal ground sets and ranks");
  }
  return std::includes(n.bases().begin(), n.bases().end(), m.bases().begin(), m.bases().end());
}

// ---------------------------------------------------------------------------
// Set systems.

/// A multiset of subsets; row order is kept but irrelevant for equality.
struct SetSystem {
  std::vector<Subset> sets;

  int size() const { return static_cast<int>(sets.size()); }
  std::vector<Subset> sorted() const {
    auto s = sets;
    std::sort(s.begin(), s.end());
    return s;
  }
  friend bool operator==(const SetSystem& a, const SetSystem& b) { return a.sorted() == b.sorted(); }
};

/// Whether the elements of `b` can be matched to distinct sets containing them
/// using every set exactly once (|b| == number of sets).
inline bool has_system_matching(const std::vector<Subset>& sets, Subset b) {
  const int d = static_cast<int>(sets.size());
  if (size_of(b) != d) return false;
  const auto elts = elements(b);
  std::vector<int> owner(d, -1);  // set -> element index
  std::vector<char> seen;
  auto augment = [&](auto&& self, int ei) -> bool {
    for (int i = 0; i < d; ++i) {
      if (!contains(sets[i], elts[ei]) || seen[i]) continue;
      seen[i] = 1;
      if (owner[i] < 0 || self(self, owner[i])) {
        owner[i] = ei;
        return true;
      }
    }
    return false;
  };
  for (int ei = 0; ei < d; ++ei) {
    seen.assign(d, 0);
    if (!augment(augment, ei)) return false;
  }
  return true;
}

/// Bases of the transversal matroid presented by `s` on {0..n-1}, or nullopt
/// if no d-subset has a system of distinct representatives.
inline std::optional<Matroid> transversal_from_system(int n, const SetSystem& s) {
  check_ground_size(n);
  std::vector<Subset> b;
  for (Subset x : k_subsets(full_set(n), s.size())) {
    if (has_system_matching(s.sets, x)) b.push_back(x);
  }
  if (b.empty()) return std::nullopt;
  return Matroid(n, std::move(b));
}

inline bool presents(const Matroid& m, const SetSystem& s) {
  if (s.size() != m.rank()) return false;
  for (Subset a : s.sets) {
    if (!is_subset(a, m.ground())) return false;
  }
  const auto t = transversal_from_system(m.universe(), s);
  return t && t->bases() == m.bases();
}

/// The unique maximal presentation, grown greedily from `s` and checked
/// against the rule "add to each A_i the coloops of M restricted to E \ A_i".
inline SetSystem maximal_presentation(const Matroid& m, const SetSystem& s) {
  if (!presents(m, s)) throw InputError("set system does not present the matroid");
  SetSystem grown = s;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& row : grown.sets) {
      for_each_element(m.ground() & ~row, [&](int e) {
        const Subset old = row;
        row |= singleton(e);
        if (presents(m, grown)) {
          changed = true;
        } else {
          row = old;
        }
      });
    }
  }
  SetSystem by_rule = s;
  for (auto& row : by_rule.sets) {
    const Subset rest = m.ground() & ~row;
    const int r = m.rank(rest);
    for_each_element(rest, [&](int e) {
      if (m.rank(rest ^ singleton(e)) < r) row |= singleton(e);
    });
  }
  if (!(grown == by_rule)) {
    throw TheoremViolation("maximal presentation: greedy fixpoint differs from the coloop rule");
  }
  return grown;
}

/// Maximal presentation read off the cyclic flats: E \ F with multiplicity
/// t(M / F). Only meaningful for transversal M; the caller should check
/// `presents`.
inline SetSystem maximal_presentation_by_cyclic_flats(const Matroid& m) {
  SetSystem out;
  for (Subset f : cyclic_flats(m).flats) {
    const long long t = t_of(contract_set(m, f));
    for (long long k = 0; k < t; ++k) out.sets.push_back(m.ground() & ~f);
  }
  return out;
}

/// Greedy refinement of `s` to a minimal presentation: rows in index order,
/// removals in ascending element order, repeated until nothing can be
/// removed. `keep`, when given, is never removed from any row.
inline SetSystem minimal_refinement(const Matroid& m, const SetSystem& s, std::optional<int> keep = {}) {
  if (!presents(m, s)) throw InputError("set system does not present the matroid");
  SetSystem out = s;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& row : out.sets) {
      for_each_element(row, [&](int e) {
        if (keep && *keep == e) return;
        const Subset old = row;
        row ^= singleton(e);
        if (presents(m, out)) {
          changed = true;
        } else {
          row = old;
        }
      });
    }
  }
  for (Subset row : out.sets) {
    if (!is_cocircuit(m, row)) throw TheoremViolation("minimal refinement produced a non-cocircuit row");
  }
  return out;
}

}  // namespace tropmat
