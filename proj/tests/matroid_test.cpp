#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tropmat/matroid.hpp"

namespace tropmat {
namespace {

using testing::S;

Matroid from_bases(int n, std::initializer_list<std::initializer_list<int>> bases) {
  std::vector<Subset> b;
  for (auto x : bases) b.push_back(S(x));
  return Matroid(n, b);
}

SetSystem sys(std::initializer_list<std::initializer_list<int>> sets) {
  SetSystem s;
  for (auto x : sets) s.sets.push_back(S(x));
  return s;
}

// Random set systems over {1..n} of size d whose transversal matroid exists.
std::pair<Matroid, SetSystem> random_transversal(std::mt19937_64& rng, int n, int d) {
  for (;;) {
    SetSystem s;
    for (int i = 0; i < d; ++i) {
      Subset row = 0;
      while (row == 0) row = static_cast<Subset>(rng() % (1u << n));
      s.sets.push_back(row);
    }
    if (auto m = transversal_from_system(n, s)) return {*m, s};
  }
}

TEST(Matroid, RankAndCorank) {
  const Matroid u23 = uniform_matroid(2, 3);
  const Matroid m = from_bases(3, {{1, 2}});
  EXPECT_EQ(rank(u23, S({1})), 1);
  EXPECT_EQ(rank(u23, S({1, 2, 3})), 2);
  EXPECT_EQ(rank(m, S({3})), 0);
  EXPECT_EQ(corank(u23, 0), 2);
  EXPECT_EQ(corank(u23, S({1, 2, 3})), 0);
  EXPECT_EQ(corank(m, S({1})), 1);
}

TEST(Matroid, RejectsBadBases) {
  EXPECT_THROW(Matroid(3, std::vector<Subset>{}), InputError);
  EXPECT_THROW(Matroid(3, std::vector<Subset>{S({1}), S({1, 2})}), InputError);
  // {12},{34} violates exchange.
  EXPECT_THROW(Matroid(4, std::vector<Subset>{S({1, 2}), S({3, 4})}), InputError);
}

// Pairwise exchange axiom, straight from the definition.
bool exchange_by_definition(const std::vector<Subset>& bases) {
  auto is_basis = [&](Subset s) { return std::find(bases.begin(), bases.end(), s) != bases.end(); };
  for (Subset b1 : bases) {
    for (Subset b2 : bases) {
      for (int e : elements(b1 & ~b2)) {
        bool ok = false;
        for (int f : elements(b2 & ~b1)) ok = ok || is_basis((b1 ^ singleton(e)) | singleton(f));
        if (!ok) return false;
      }
    }
  }
  return true;
}

// Random families of k-subsets, biased towards near-matroids by deleting a
// few bases from a uniform matroid or a direct sum.
TEST(Matroid, ExchangeCheckMatchesDefinition) {
  std::mt19937_64 rng(33);
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    std::vector<Subset> family;
    for (Subset s : k_subsets(full_set(n), k)) {
      if (rng() % 8 != 0) family.push_back(s);
    }
    if (t % 3 == 0) {
      const std::vector<Subset> all = k_subsets(full_set(n), k);
      family.assign(all.begin(), all.end());
      family.erase(family.begin() + static_cast<long>(rng() % family.size()));
    }
    if (family.empty()) continue;
    const bool want = exchange_by_definition(family);
    bool got = true;
    try {
      Matroid(n, family);
    } catch (const InputError&) {
      got = false;
    }
    EXPECT_EQ(got, want);
    (want ? accepted : rejected) += 1;
  }
  EXPECT_GT(accepted, 20);
  EXPECT_GT(rejected, 20);
}

TEST(Matroid, FlatFamilies) {
  const Matroid u23 = uniform_matroid(2, 3);
  EXPECT_EQ(hyperplanes(u23).size(), 3u);
  for (Subset h : {S({1}), S({2}), S({3})}) EXPECT_TRUE(is_hyperplane(u23, h));
  auto co = cocircuits(u23);
  std::sort(co.begin(), co.end());
  EXPECT_EQ(co, (std::vector<Subset>{S({1, 2}), S({1, 3}), S({2, 3})}));
  EXPECT_EQ(coloops(from_bases(2, {{1, 2}})), S({1, 2}));
  EXPECT_EQ(loops(from_bases(3, {{1, 2}})), S({3}));
  auto circ = circuits(u23);
  EXPECT_EQ(circ, std::vector<Subset>{S({1, 2, 3})});
}

TEST(Matroid, FlatsMatchDefinition) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int d = 1 + static_cast<int>(rng() % std::min(n, 3));
    auto [m, s] = random_transversal(rng, n, d);
    auto f = flats(m);
    std::sort(f.begin(), f.end());
    EXPECT_EQ(f, testing::flats_by_definition(m));
  }
}

TEST(CyclicFlats, Examples) {
  auto lat = cyclic_flats(uniform_matroid(2, 3));
  EXPECT_EQ(lat.flats, (std::vector<Subset>{0, S({1, 2, 3})}));
  EXPECT_EQ(lat.moebius, (std::vector<long long>{1, -1}));

  EXPECT_EQ(cyclic_flats(uniform_matroid(2, 2)).flats, std::vector<Subset>{0});

  auto sum = cyclic_flats(from_bases(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
  auto f = sum.flats;
  std::sort(f.begin(), f.end());
  EXPECT_EQ(f, (std::vector<Subset>{0, S({1, 2}), S({3, 4}), S({1, 2, 3, 4})}));
}

TEST(CyclicFlats, MoebiusRecursion) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int d = 1 + static_cast<int>(rng() % std::min(n, 4));
    auto [m, s] = random_transversal(rng, n, d);
    auto lat = cyclic_flats(m);
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
      long long sum = 0;
      for (std::size_t j = 0; j < lat.flats.size(); ++j) {
        if (is_subset(lat.flats[j], lat.flats[i])) sum += lat.moebius[j];
      }
      EXPECT_EQ(sum, lat.flats[i] == lat.bottom() ? 1 : 0);
    }
    // Every cyclic flat is a flat whose restriction has no coloop.
    for (Subset f : lat.flats) {
      EXPECT_TRUE(is_flat(m, f));
      for_each_element(f, [&](int e) { EXPECT_EQ(m.rank(f ^ singleton(e)), m.rank(f)); });
    }
  }
}

TEST(TOf, Examples) {
  EXPECT_EQ(t_of(uniform_matroid(2, 3)), 2);
  EXPECT_EQ(t_of(uniform_matroid(1, 1)), 1);
  EXPECT_EQ(t_of(uniform_matroid(1, 2)), 1);
  EXPECT_EQ(t_of(uniform_matroid(2, 2)), 2);
  EXPECT_EQ(t_of(from_bases(3, {{1, 2}})), 0);
}

TEST(Matroid, Minors) {
  const Matroid u23 = uniform_matroid(2, 3);
  const Matroid c = contraction(u23, S({1}));
  EXPECT_EQ(c.ground(), S({2, 3}));
  EXPECT_EQ(c.bases(), (std::vector<Subset>{S({2}), S({3})}));
  const Matroid dl = deletion(u23, S({3}));
  EXPECT_EQ(dl.ground(), S({1, 2}));
  EXPECT_EQ(dl.bases(), std::vector<Subset>{S({1, 2})});
  const Matroid ds = direct_sum(uniform_matroid(1, 1), uniform_matroid(1, 1));
  EXPECT_EQ(ds.bases(), std::vector<Subset>{S({1, 2})});
  EXPECT_THROW(deletion(from_bases(2, {{1, 2}}), S({1})), InputError);
  EXPECT_THROW(contraction(from_bases(3, {{1, 2}}), S({3})), InputError);
}

TEST(Matroid, WeakOrder) {
  const Matroid u23 = uniform_matroid(2, 3);
  const Matroid m = from_bases(3, {{1, 2}});
  EXPECT_TRUE(weak_order_leq(m, u23));
  EXPECT_FALSE(weak_order_leq(u23, m));
  EXPECT_TRUE(weak_order_leq(m, m));
  EXPECT_THROW(weak_order_leq(uniform_matroid(1, 3), u23), InputError);
}

TEST(Transversal, Examples) {
  EXPECT_EQ(*transversal_from_system(3, sys({{1, 2}, {1, 3}})), uniform_matroid(2, 3));
  EXPECT_FALSE(transversal_from_system(3, sys({{1}, {1}})).has_value());
  EXPECT_EQ(*transversal_from_system(3, sys({{1, 2, 3}, {1, 2, 3}})), uniform_matroid(2, 3));
}

TEST(Transversal, MatchesAssignmentEnumeration) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int d = 1 + static_cast<int>(rng() % std::min(n, 4));
    SetSystem s;
    for (int i = 0; i < d; ++i) s.sets.push_back(static_cast<Subset>(rng() % (1u << n)));
    auto want = testing::transversal_bases_by_permutations(n, s.sets);
    auto got = transversal_from_system(n, s);
    if (want.empty()) {
      EXPECT_FALSE(got.has_value());
    } else {
      ASSERT_TRUE(got.has_value());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got->bases(), want);
    }
  }
}

TEST(Presentation, MaximalExamples) {
  EXPECT_EQ(maximal_presentation(uniform_matroid(2, 3), sys({{1, 2}, {1, 3}})), sys({{1, 2, 3}, {1, 2, 3}}));
  EXPECT_EQ(maximal_presentation(uniform_matroid(2, 2), sys({{1}, {2}})), sys({{1, 2}, {1, 2}}));
  EXPECT_EQ(maximal_presentation(uniform_matroid(2, 3), sys({{1, 2, 3}, {1, 2, 3}})), sys({{1, 2, 3}, {1, 2, 3}}));
  EXPECT_THROW(maximal_presentation(uniform_matroid(2, 3), sys({{1}, {2}})), InputError);
}

TEST(Presentation, MinimalExamples) {
  auto r = minimal_refinement(uniform_matroid(2, 3), sys({{1, 2, 3}, {1, 2, 3}}));
  EXPECT_TRUE(presents(uniform_matroid(2, 3), r));
  for (Subset row : r.sets) EXPECT_TRUE(is_cocircuit(uniform_matroid(2, 3), row));
  EXPECT_EQ(minimal_refinement(uniform_matroid(2, 2), sys({{1, 2}, {1, 2}})), sys({{1}, {2}}));
  EXPECT_EQ(minimal_refinement(uniform_matroid(2, 3), sys({{1, 2}, {1, 3}})), sys({{1, 2}, {1, 3}}));
}

TEST(Presentation, Properties) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 150; ++k) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int d = 1 + static_cast<int>(rng() % std::min(n, 4));
    auto [m, s] = random_transversal(rng, n, d);
    for (Subset row : s.sets) EXPECT_TRUE(is_flat(m, m.ground() & ~row));

    const SetSystem mx = maximal_presentation(m, s);
    EXPECT_EQ(maximal_presentation(m, mx), mx);
    EXPECT_EQ(mx, maximal_presentation_by_cyclic_flats(m));
    // Rowwise containment under some bijection: greedy growth keeps indices.
    for (int i = 0; i < d; ++i) EXPECT_TRUE(is_subset(s.sets[i], mx.sets[i]));

    const SetSystem mn = minimal_refinement(m, s);
    EXPECT_TRUE(presents(m, mn));
    for (int i = 0; i < d; ++i) {
      EXPECT_TRUE(is_subset(mn.sets[i], s.sets[i]));
      EXPECT_TRUE(is_cocircuit(m, mn.sets[i]));
    }

    if (loops(m) == 0) EXPECT_GE(t_of(m), 0);
    for (Subset f : cyclic_flats(m).flats) EXPECT_GE(t_of(contract_set(m, f)), 0);
  }
}

}  // namespace
}  // namespace tropmat
