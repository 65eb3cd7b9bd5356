#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tropmat/presentation.hpp"

namespace tropmat {
namespace {

using testing::Mat;
using testing::S;
using testing::T;

// Stiefel by permutation enumeration.
std::map<Subset, Trop> stiefel_oracle(const TropMatrix& a) {
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(full_set(a.cols()), a.rows())) {
    v.emplace(b, testing::minor_by_permutations(a, full_set(a.rows()), b));
  }
  return v;
}

bool presents_oracle(const TropMatrix& a, const ValuatedMatroid& mu) {
  for (const auto& [b, x] : stiefel_oracle(a)) {
    if (mu[b] != x) return false;
  }
  return true;
}

// Cocircuit by definition: complement is a flat of corank one.
bool is_cocircuit_oracle(const Matroid& m, Subset s) {
  const auto f = testing::flats_by_definition(m);
  const Subset h = m.ground() & ~s;
  if (!std::binary_search(f.begin(), f.end(), h)) return false;
  int r = 0;
  for (Subset b : m.bases()) r = std::max(r, size_of(h & b));
  return r == m.rank() - 1;
}

TEST(Stiefel, Examples) {
  EXPECT_EQ(stiefel(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}})), testing::constant_vm(3, 2));
  EXPECT_EQ(stiefel(Mat({{"1", "0", "0", "inf"}, {"0", "0", "0", "0"}})), testing::u23_family(1, "1"));
  EXPECT_THROW(stiefel(Mat({{"inf", "inf"}, {"inf", "inf"}})), InputError);
}

TEST(Stiefel, ImageSatisfiesPluecker) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 300; ++k) {
    const int d = 1 + static_cast<int>(rng() % 4);
    const int n = d + static_cast<int>(rng() % (9 - d));
    const auto a = testing::random_matrix(rng, d, n, 30);
    const auto f = stiefel_function(a);
    EXPECT_TRUE(check_pluecker(f).ok);
    if (n <= 6) {
      for (const auto& [b, x] : stiefel_oracle(a)) EXPECT_EQ(f[b], x);
    }
  }
}

TEST(IsPresentation, Examples) {
  EXPECT_TRUE(is_presentation(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}}), testing::constant_vm(3, 2)));
  EXPECT_FALSE(is_presentation(Mat({{"0", "0", "0", "0"}, {"0", "0", "0", "0"}}), testing::u23_family(1, "1")));
  EXPECT_THROW(Presentation(Mat({{"0", "0", "0"}, {"inf", "inf", "inf"}})), InputError);
}

TEST(EntryLowerBound, Examples) {
  const Presentation u(Mat({{"1", "0", "0", "inf"}, {"0", "0", "0", "0"}}));
  EXPECT_EQ(entry_lower_bound(u, 0, 3), T("1"));
  const Presentation t(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}}));
  EXPECT_EQ(entry_lower_bound(t, 0, 2), T("0"));
  // Column 3 is inf in the other row, and row 1 has no other partner for 1,2.
  const Presentation lone(Mat({{"0", "inf", "inf"}, {"inf", "0", "inf"}}));
  EXPECT_EQ(entry_lower_bound(lone, 0, 2), Trop::inf());
}

// The bound keeps Stiefel when substituted and is tight: a slightly smaller
// value changes some minor.
TEST(EntryLowerBound, IsTight) {
  std::mt19937_64 rng(42);
  const Trop eps = T("1/1000000");
  for (int k = 0; k < 100; ++k) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int n = d + 1 + static_cast<int>(rng() % 3);
    const Presentation p(testing::random_matrix(rng, d, n, 30));
    const int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % n);
    const Trop v = entry_lower_bound(p, i, j);
    EXPECT_TRUE(presents_oracle(p.matrix().with_entry(i, j, v), p.mu()));
    if (v.is_finite()) {
      EXPECT_FALSE(presents_oracle(p.matrix().with_entry(i, j, v - eps), p.mu()));
    } else {
      // inf either because the entry never enters a matching, or because it
      // would create a finite minor where mu is inf.
      bool constrained = false;
      for (Subset rest : k_subsets(full_set(n) ^ singleton(j), d - 1)) {
        constrained = constrained || testing::minor_by_permutations(p.matrix(), full_set(d) ^ singleton(i), rest).is_finite();
      }
      EXPECT_EQ(presents_oracle(p.matrix().with_entry(i, j, T("-100")), p.mu()), !constrained);
    }
  }
}

TEST(Dapx, Examples) {
  const auto t = compute_dapx(Presentation(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}})));
  EXPECT_EQ(t.matrix, Mat({{"0", "0", "0"}, {"0", "0", "0"}}));
  auto mult = t.multiplicities();
  ASSERT_EQ(mult.size(), 1u);
  EXPECT_EQ(mult.begin()->first, uniform_matroid(2, 3));
  EXPECT_EQ(mult.begin()->second, 2);

  const auto u = compute_dapx(Presentation(Mat({{"1", "0", "0", "inf"}, {"0", "0", "0", "0"}})));
  EXPECT_EQ(u.matrix, Mat({{"1", "0", "0", "1"}, {"0", "0", "0", "0"}}));
  const auto again = compute_dapx(Presentation(u.matrix));
  EXPECT_EQ(again.matrix, u.matrix);
}

TEST(Dapx, U23FamilyDistinguishedMatroids) {
  const auto u = compute_dapx(Presentation(Mat({{"1", "0", "0", "inf"}, {"0", "0", "0", "0"}})));
  // Row 1 has 2 and 3 parallel; row 2 has 1 and 4 parallel.
  const Matroid& m1 = u.rows[0].matroid;
  const Matroid& m2 = u.rows[1].matroid;
  EXPECT_FALSE(m1.is_basis(S({2, 3})));
  EXPECT_EQ(m1.bases().size(), 5u);
  EXPECT_FALSE(m2.is_basis(S({1, 4})));
  EXPECT_EQ(m2.bases().size(), 5u);
  EXPECT_EQ(t_of(m1), 1);
  EXPECT_EQ(t_of(m2), 1);
}

TEST(Decompose, Examples) {
  const Presentation a(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}}));
  const auto dec = decompose(a, compute_dapx(a));
  EXPECT_EQ(dec.rows[0].raised, S({3}));
  EXPECT_EQ(dec.rows[1].raised, S({2}));
  EXPECT_EQ(dec.rows[0].shift, Rational(0));
  EXPECT_EQ(dec.rows[0].alpha[2], Trop::inf());

  const auto apx = compute_dapx(a);
  const auto self = decompose(Presentation(apx.matrix), apx);
  for (int r = 0; r < 2; ++r) {
    EXPECT_EQ(self.rows[r].raised, 0u);
    EXPECT_EQ(self.rows[r].shift, Rational(0));
  }

  const Presentation shifted(Mat({{"5", "5", "5"}, {"0", "0", "0"}}));
  const auto sd = decompose(shifted, compute_dapx(shifted));
  EXPECT_EQ(sd.rows[0].shift, Rational(5));
  EXPECT_EQ(sd.rows[0].raised, 0u);
}

TEST(Decompose, RejectsForeignApices) {
  const Presentation a(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}}));
  const Presentation b(Mat({{"1", "0", "0", "inf"}, {"0", "0", "0", "0"}}));
  EXPECT_THROW(decompose(a, compute_dapx(b)), InputError);
}

TEST(Minimality, Examples) {
  EXPECT_TRUE(is_minimal(Presentation(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}}))));
  EXPECT_FALSE(is_minimal(Presentation(Mat({{"0", "0", "0"}, {"0", "0", "0"}}))));
  EXPECT_FALSE(is_minimal(Presentation(Mat({{"1", "0", "0", "inf"}, {"0", "0", "0", "0"}}))));
}

TEST(Minimize, Examples) {
  const Presentation full(Mat({{"0", "0", "0"}, {"0", "0", "0"}}));
  const auto m = minimize(full);
  EXPECT_TRUE(presents_oracle(m.matrix(), full.mu()));
  EXPECT_TRUE(is_minimal(m));

  const Presentation dapx(Mat({{"1", "0", "0", "1"}, {"0", "0", "0", "0"}}));
  const auto k = minimize(dapx, 3);
  EXPECT_TRUE(presents_oracle(k.matrix(), dapx.mu()));
  for (int r = 0; r < 2; ++r) EXPECT_TRUE(k.matrix().at(r, 3).is_finite());

  const Presentation minimal(Mat({{"0", "0", "inf"}, {"0", "inf", "0"}}));
  EXPECT_EQ(minimize(minimal).matrix().support_system(), minimal.matrix().support_system());
}

// Theorem-level properties over a seeded corpus of random presentations.
TEST(Presentation, CorpusProperties) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 150; ++k) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int n = d + static_cast<int>(rng() % (7 - d));
    const Presentation p(testing::random_matrix(rng, d, n, 30));
    const Matroid& m = p.mu().underlying();
    for (int i = 0; i < d; ++i) EXPECT_TRUE(in_tropical_linear_space(p.mu(), p.matrix().row(i)).ok);

    const auto apx = compute_dapx(p);
    EXPECT_TRUE(presents_oracle(apx.matrix, p.mu()));
    EXPECT_EQ(SetSystem{apx.matrix.support_system()}, maximal_presentation_by_cyclic_flats(m));
    int total = 0;
    for (const auto& [dm, count] : apx.multiplicities()) {
      EXPECT_EQ(count, t_of(dm));
      total += count;
    }
    EXPECT_EQ(total, d);
    EXPECT_EQ(compute_dapx(Presentation(apx.matrix)).matrix, apx.matrix);

    const auto dec = decompose(p, apx);
    for (int r = 0; r < d; ++r) {
      const auto& row = dec.rows[r];
      for (int j = 0; j < n; ++j) {
        const Trop want = row.apex_point[j] + Trop(row.shift) + row.alpha[j];
        EXPECT_EQ(p.matrix().at(r, j), want);
      }
    }

    const auto mn = minimize(p);
    EXPECT_TRUE(presents_oracle(mn.matrix(), p.mu()));
    for (int r = 0; r < d; ++r) EXPECT_TRUE(is_cocircuit_oracle(m, mn.matrix().row(r).support()));
    bool all_cocircuits = true;
    for (int r = 0; r < d; ++r) all_cocircuits = all_cocircuits && is_cocircuit_oracle(m, p.matrix().row(r).support());
    EXPECT_EQ(is_minimal(p), all_cocircuits);
  }
}

}  // namespace
}  // namespace tropmat
