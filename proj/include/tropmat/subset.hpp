#pragma once

// Subsets of a small ground set {0, ..., n-1} as bitmasks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "tropmat/errors.hpp"

namespace tropmat {

using Subset = std::uint32_t;

inline constexpr int kMaxGround = 16;

constexpr Subset full_set(int n) { return n >= 32 ? ~Subset{0} : ((Subset{1} << n) - 1); }
constexpr Subset singleton(int e) { return Subset{1} << e; }
constexpr bool contains(Subset s, int e) { return (s >> e) & 1u; }
constexpr bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
constexpr int size_of(Subset s) { return std::popcount(s); }
constexpr int lowest(Subset s) { return std::countr_zero(s); }

inline void check_ground_size(int n) {
  if (n < 0 || n > kMaxGround) {
    throw InputError("ground set size " + std::to_string(n) + " outside [0, " +
                     std::to_string(kMaxGround) + "]");
  }
}

inline std::vector<int> elements(Subset s) {
  std::vector<int> out;
  out.reserve(size_of(s));
  for (; s != 0; s &= s - 1) out.push_back(lowest(s));
  return out;
}

/// Calls f(e) for each element of s in increasing order.
template <class F>
void for_each_element(Subset s, F&& f) {
  for (; s != 0; s &= s - 1) f(lowest(s));
}

/// All k-subsets of `ground`, increasing as integers (colex order).
inline std::vector<Subset> k_subsets(Subset ground, int k) {
  std::vector<Subset> out;
  const auto elts = elements(ground);
  const int m = static_cast<int>(elts.size());
  if (k < 0 || k > m) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  // Gosper's hack over compressed indices, then expand onto `ground`.
  std::uint64_t x = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << m;
  while (x < limit) {
    Subset s = 0;
    for (std::uint64_t y = x; y != 0; y &= y - 1) s |= singleton(elts[std::countr_zero(y)]);
    out.push_back(s);
    std::uint64_t c = x & (~x + 1);
    std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

/// All subsets of `ground`, increasing as integers.
inline std::vector<Subset> all_subsets(Subset ground) {
  std::vector<Subset> out;
  Subset s = 0;
  do {
    out.push_back(s);
    s = (s - ground) & ground;
  } while (s != 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Lexicographic comparison of sorted element lists, used for output order.
inline bool lex_less(Subset a, Subset b) {
  auto ea = elements(a), eb = elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

/// Binomial coefficients up to kMaxGround.
inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Position of `s` among the |s|-subsets of `ground` in colex order.
inline std::size_t colex_rank(Subset s, Subset ground) {
  std::size_t rank = 0;
  int pos = 0, j = 0;
  for (Subset g = ground; g != 0; g &= g - 1, ++pos) {
    if (contains(s, lowest(g))) {
      ++j;
      rank += static_cast<std::size_t>(binomial(pos, j));
    }
  }
  return rank;
}

}  // namespace tropmat
