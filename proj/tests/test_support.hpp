#pragma once

// Literal helpers and brute-force oracles shared by the unit tests. The
// oracles deliberately avoid the library's own algorithms.

#include <algorithm>
#include <initializer_list>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tropmat/matrix.hpp"
#include "tropmat/matroid.hpp"
#include "tropmat/subset.hpp"
#include "tropmat/trop.hpp"
#include "tropmat/valuated.hpp"

namespace tropmat::testing {

inline Trop T(const char* s) { return parse_trop(s); }

/// Matrix from string entries ("inf", "p/q", integers).
inline TropMatrix Mat(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<TropVector> r;
  for (auto row : rows) {
    std::vector<Trop> e;
    for (const char* s : row) e.push_back(parse_trop(s));
    r.emplace_back(std::move(e));
  }
  return TropMatrix(std::move(r));
}

/// Subset from 1-based labels.
inline Subset S(std::initializer_list<int> labels) {
  Subset s = 0;
  for (int l : labels) s |= singleton(l - 1);
  return s;
}

/// Valuated matroid on {1..n} of rank d with the listed values; others inf.
inline ValuatedMatroid VM(int n, int d, std::initializer_list<std::pair<Subset, const char*>> values) {
  std::map<Subset, Trop> v;
  for (const auto& [s, x] : values) v.emplace(s, parse_trop(x));
  return ValuatedMatroid(n, full_set(n), d, v);
}

/// Constant function c on every d-subset of {1..n}.
inline ValuatedMatroid constant_vm(int n, int d, const char* c = "0") {
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(full_set(n), d)) v.emplace(b, parse_trop(c));
  return ValuatedMatroid(n, full_set(n), d, v);
}

/// μ^{i,λ} on {1..4}: 0 everywhere except {i,4} -> λ.
inline ValuatedMatroid u23_family(int i, const char* lambda) {
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(full_set(4), 2)) v.emplace(b, Trop(0));
  v[S({i, 4})] = parse_trop(lambda);
  return ValuatedMatroid(4, full_set(4), 2, v);
}

/// Minor by enumerating every bijection (permutation of the columns).
inline Trop minor_by_permutations(const TropMatrix& a, Subset rows, Subset cols) {
  auto r = elements(rows);
  auto c = elements(cols);
  if (r.size() != c.size()) throw InputError("non-square");
  std::vector<int> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  Trop best;
  do {
    Trop w(0);
    for (std::size_t k = 0; k < r.size(); ++k) w = w + a.at(r[k], c[perm[k]]);
    best = trop_add(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Bases of the transversal matroid of a set system by trying every
/// assignment of elements to sets.
inline std::vector<Subset> transversal_bases_by_permutations(int n, const std::vector<Subset>& sets) {
  std::vector<Subset> out;
  const int d = static_cast<int>(sets.size());
  for (Subset b : k_subsets(full_set(n), d)) {
    auto e = elements(b);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    bool ok = false;
    do {
      bool all = true;
      for (int k = 0; k < d; ++k) all = all && contains(sets[perm[k]], e[k]);
      ok = ok || all;
    } while (!ok && std::next_permutation(perm.begin(), perm.end()));
    if (ok) out.push_back(b);
  }
  return out;
}

/// Flats by definition: no element outside raises... checked as "adding any
/// outside element increases the max intersection with a basis".
inline std::vector<Subset> flats_by_definition(const Matroid& m) {
  auto rk = [&](Subset s) {
    int r = 0;
    for (Subset b : m.bases()) r = std::max(r, size_of(s & b));
    return r;
  };
  std::vector<Subset> out;
  for (Subset s : all_subsets(m.ground())) {
    bool flat = true;
    for_each_element(m.ground() & ~s, [&](int e) { flat = flat && rk(s | singleton(e)) > rk(s); });
    if (flat) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline TropMatrix random_matrix(std::mt19937_64& rng, int d, int n, int inf_percent) {
  static const char* grid[] = {"-2", "-1", "-1/2", "0", "1/3", "1", "3/2", "2"};
  for (;;) {
    std::vector<TropVector> rows;
    bool empty = false;
    for (int i = 0; i < d; ++i) {
      std::vector<Trop> e;
      for (int j = 0; j < n; ++j) {
        e.push_back(static_cast<int>(rng() % 100) < inf_percent ? Trop::inf() : parse_trop(grid[rng() % 8]));
      }
      rows.emplace_back(std::move(e));
      empty = empty || rows.back().support() == 0;
    }
    if (empty) continue;
    TropMatrix a(std::move(rows));
    for (Subset b : k_subsets(full_set(n), d)) {
      if (minor_by_permutations(a, full_set(d), b).is_finite()) return a;
    }
  }
}

}  // namespace tropmat::testing
