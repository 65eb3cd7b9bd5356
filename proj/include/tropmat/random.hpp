#pragma once

// Seeded generators for test corpora. Only mt19937_64 output and modular
// reduction are used, so a seed gives the same instances on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/matrix.hpp"
#include "tropmat/trop.hpp"

namespace tropmat {

inline std::vector<Rational> default_value_grid() {
  return {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 3),
          Rational(1), Rational(3, 2), Rational(2)};
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t k) { return static_cast<std::size_t>(rng() % k); }

/// True with probability p (p in [0, 1], denominator below 2^32).
inline bool bernoulli(std::mt19937_64& rng, const Rational& p) {
  const unsigned long den = p.get_den().get_ui();
  const unsigned long num = p.get_num().get_ui();
  return uniform_index(rng, den) < num;
}

inline Trop random_entry(std::mt19937_64& rng, const Rational& inf_probability, const std::vector<Rational>& grid) {
  if (bernoulli(rng, inf_probability)) return Trop::inf();
  return Trop(grid[uniform_index(rng, grid.size())]);
}

/// A column for extensions: grid values, inf with probability 1/(d+2).
inline std::vector<Trop> random_column(std::mt19937_64& rng, int d,
                                       const std::vector<Rational>& grid = default_value_grid()) {
  std::vector<Trop> x;
  x.reserve(d);
  for (int i = 0; i < d; ++i) x.push_back(random_entry(rng, Rational(1, d + 2), grid));
  return x;
}

/// Independent stream for item `index` of a seeded run.
inline std::mt19937_64 instance_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

struct CorpusSpec {
  int n = 4;
  int d = 2;
  int count = 100;
  std::uint64_t seed = 1;
  Rational inf_probability = Rational(1, 4);
  std::vector<Rational> value_grid = default_value_grid();
};

/// A d x n matrix with no all-inf row and at least one finite maximal minor.
inline TropMatrix random_presentation_matrix(std::mt19937_64& rng, const CorpusSpec& spec) {
  if (spec.d < 1 || spec.d > spec.n) throw InputError("corpus needs 1 <= d <= n");
  if (spec.value_grid.empty()) throw InputError("empty value grid");
  if (spec.inf_probability < 0 || spec.inf_probability >= 1) throw InputError("inf probability must lie in [0, 1)");
  for (;;) {
    std::vector<TropVector> rows;
    bool empty_row = false;
    for (int i = 0; i < spec.d; ++i) {
      std::vector<Trop> e;
      for (int j = 0; j < spec.n; ++j) e.push_back(random_entry(rng, spec.inf_probability, spec.value_grid));
      rows.emplace_back(std::move(e));
      empty_row = empty_row || rows.back().support() == 0;
    }
    if (empty_row) continue;
    TropMatrix a(std::move(rows));
    for (const auto& [b, v] : all_maximal_minors(a)) {
      if (v.is_finite()) return a;
    }
  }
}

inline std::vector<TropMatrix> generate_corpus(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<TropMatrix> out;
  out.reserve(spec.count);
  for (int k = 0; k < spec.count; ++k) out.push_back(random_presentation_matrix(rng, spec));
  return out;
}

}  // namespace tropmat
