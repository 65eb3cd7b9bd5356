#pragma once

// Invariant checks over seeded corpora, shared by `tropmat verify` and the
// acceptance runner. A check throws TheoremViolation on failure; run_checks
// turns any exception into a failed instance carrying its input.

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tropmat/extension.hpp"
#include "tropmat/lab.hpp"
#include "tropmat/presentation.hpp"
#include "tropmat/random.hpp"

namespace tropmat {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw TheoremViolation(what);
}

// ---------------------------------------------------------------------------
// Single-instance checks. `rng` drives any sampling.

/// Stiefel(A) is a valuated matroid: matroid support and three-term relations.
inline void check_stiefel_sound(const TropMatrix& a) {
  const auto v = check_valuated(stiefel_function(a));
  require(v.ok, "Stiefel image is not a valuated matroid: " + v.reason);
}

/// Every row of A lies in Trop(Stiefel(A)).
inline void check_row_membership(const Presentation& a) {
  for (int i = 0; i < a.rows(); ++i) {
    require(in_tropical_linear_space(a.mu(), a.matrix().row(i)).ok,
            "row " + std::to_string(i + 1) + " is not in the tropical linear space");
  }
}

/// dapx presents mu, is its own dapx, and its supports are the maximal
/// presentation of the underlying matroid (both constructions).
inline void check_fo_maximal(const Presentation& a) {
  const ApexDecomposition apx = compute_dapx(a);
  const Matroid& m = a.mu().underlying();
  const SetSystem supports{apx.matrix.support_system()};
  require(is_presentation(apx.matrix, a.mu()), "dapx does not present mu");
  require(supports == maximal_presentation(m, SetSystem{a.matrix().support_system()}),
          "dapx support differs from the maximal presentation grown from A");
  require(supports == maximal_presentation_by_cyclic_flats(m),
          "dapx support differs from the cyclic-flat maximal presentation");
  require(compute_dapx(Presentation(apx.matrix)).matrix == apx.matrix, "dapx is not a fixpoint");
}

/// The distinguished matroids have multiplicities t(M) summing to d.
inline void check_multiplicities(const Presentation& a) {
  const ApexDecomposition apx = compute_dapx(a);
  int total = 0;
  for (const auto& [m, count] : apx.multiplicities()) {
    require(count == t_of(m), "multiplicity differs from t(M)");
    total += count;
  }
  require(total == a.rows(), "multiplicities do not sum to d");
}

/// Each row of A is apex + shift + raises on J with positive raises, and the
/// apices used form a bijection with the dapx rows.
inline void check_decompose(const Presentation& a) {
  const ApexDecomposition apx = compute_dapx(a);
  const ApexDecomposition dec = decompose(a, apx);
  std::vector<int> used;
  for (int r = 0; r < a.rows(); ++r) {
    const ApexRow& row = dec.rows[r];
    used.push_back(row.apex);
    require(row.apex_point == apx.matrix.row(row.apex), "apex is not a row of dapx");
    require(row.matroid == apx.rows[row.apex].matroid, "distinguished matroid differs from its apex");
    for (int j = 0; j < a.cols(); ++j) {
      const Trop want = row.apex_point[j] + Trop(row.shift) + (contains(row.raised, j) ? row.alpha[j] : Trop(0));
      require(a.matrix().at(r, j) == want, "row " + std::to_string(r + 1) + " is not reconstructed");
      if (contains(row.raised, j)) require(Trop(0) < row.alpha[j], "non-positive raise");
    }
  }
  std::sort(used.begin(), used.end());
  require(std::adjacent_find(used.begin(), used.end()) == used.end(), "two rows share an apex");
}

/// Minimal iff extensions are injective, witnessed by certificates and
/// `pairs` sampled columns or by a verified collision. Returns the verdict.
inline std::string check_different(const Presentation& a, int pairs, std::uint64_t seed) {
  const bool minimal = is_minimal(a);
  const InjectivityVerdict v = extensions_injective(a, pairs, seed);
  require((v.kind == InjectivityKind::kInjective) == minimal, "injectivity verdict disagrees with minimality");
  if (v.kind == InjectivityKind::kInjective) {
    require(static_cast<int>(v.certificates.size()) == a.rows(), "wrong number of certificate bases");
    require(v.sampled_pairs == pairs, "not all pairs were sampled");
    return "INJECTIVE";
  }
  require(v.collision->x != v.collision->y, "collision columns are equal");
  require(extend(a, v.collision->x) == extend(a, v.collision->y), "collision extensions differ");
  return "COLLISION";
}

/// Meet law for random x, y and semilattice laws on a random triple.
inline void check_join(const Presentation& a, std::mt19937_64& rng) {
  const int d = a.rows();
  const ExtensionColumn x = random_column(rng, d), y = random_column(rng, d), z = random_column(rng, d);
  const NormalizedExtension ex = extend(a, x), ey = extend(a, y), ez = extend(a, z);
  const NormalizedExtension m = meet(a, x, y);
  require(m.values().function() == min_of_extensions(ex, ey), "meet is not the coordinatewise min");
  require(poset_leq(m, ex) && poset_leq(m, ey), "meet is not below both arguments");
  const SubsetFunction xy = min_of_extensions(ex, ey);
  require(xy == min_of_extensions(ey, ex), "meet is not commutative");
  require(min_of_extensions(ex, ex) == ex.values().function(), "meet is not idempotent");
  require(trop_add(xy, ez.values().function()) == trop_add(ex.values().function(), min_of_extensions(ey, ez)),
          "meet is not associative");
}

/// (A|x) is minimal for minimal A = minimize(a) and random x.
inline void check_extension_minimal(const Presentation& a, std::mt19937_64& rng) {
  const Presentation m = minimize(a);
  const ExtensionColumn x = random_column(rng, a.rows());
  const Presentation ax(m.matrix().append_column(x));
  require(ax.mu() == extend(m, x).values(), "(A|x) does not present the extension");
  require(is_minimal(ax), "(A|x) is not minimal");
}

/// present_extension_minimally on b (its last column is *), verified
/// independently. Precondition: * is not a coloop of Stiefel(b).
inline void check_present_min(const Presentation& b) {
  const auto out = present_extension_minimally(b.mu(), b);
  const Presentation a(out.a);
  require(a.mu().function() == delete_star(b.mu().function()), "A does not present the deletion");
  require(is_minimal(a), "A is not minimal");
  require(stiefel_function(out.combined) == b.mu().function(), "Stiefel(A|x) differs from the input");
  require(out.combined == out.a.append_column(out.x), "combined matrix is not (A|x)");
}

/// minimize gives a minimal presentation of the same representative with
/// cocircuit rows, fixes minimal input, and minimality of A is the cocircuit
/// test. Also runs the minimal-extension round trip on (A|x).
inline void check_minimal(const Presentation& a, std::mt19937_64& rng) {
  const Matroid& m = a.mu().underlying();
  const Presentation mn = minimize(a);
  require(mn.mu() == a.mu(), "minimize changed the representative");
  bool cocircuits = true;
  for (int r = 0; r < a.rows(); ++r) {
    require(is_cocircuit(m, mn.matrix().row(r).support()), "minimized row is not a cocircuit");
    cocircuits = cocircuits && is_cocircuit(m, a.matrix().row(r).support());
  }
  require(is_minimal(mn), "minimize output is not minimal");
  require(is_minimal(a) == cocircuits, "minimality differs from the cocircuit test");
  require(minimize(mn).matrix() == mn.matrix(), "minimize is not a fixpoint on minimal input");
  const Presentation b(a.matrix().append_column(random_column(rng, a.rows())));
  if (!contains(coloops(b.mu().underlying()), a.cols())) check_present_min(b);
}

// ---------------------------------------------------------------------------
// Runs.

struct InstanceResult {
  int index = 0;
  bool pass = true;
  std::string verdict;  // suite-specific label, empty if none
  std::string reason;   // empty when passed
  TropMatrix matrix;
};

struct SuiteReport {
  std::string suite;
  CorpusSpec corpus;
  std::vector<InstanceResult> instances;

  int passed() const {
    return static_cast<int>(std::count_if(instances.begin(), instances.end(), [](const auto& r) { return r.pass; }));
  }
  bool ok() const { return passed() == static_cast<int>(instances.size()); }
};

/// f(k) for k < count on worker threads; results in index order.
template <class R>
std::vector<R> parallel_map(int count, const std::function<R(int)>& f, unsigned threads = 0) {
  std::vector<std::optional<R>> slots(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < count; k = next++) slots[k] = f(k);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

using InstanceCheck = std::function<std::string(const TropMatrix&, int index)>;

inline std::vector<InstanceResult> run_checks(const std::vector<TropMatrix>& corpus, const InstanceCheck& check,
                                              unsigned threads = 0) {
  return parallel_map<InstanceResult>(
      static_cast<int>(corpus.size()),
      [&](int k) {
        InstanceResult r{k, true, "", "", corpus[k]};
        try {
          r.verdict = check(corpus[k], k);
        } catch (const TheoremViolation& e) {
          r.pass = false;
          r.reason = std::string("theorem violation: ") + e.what();
        } catch (const std::exception& e) {
          r.pass = false;
          r.reason = std::string("error: ") + e.what();
        }
        return r;
      },
      threads);
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"different", "minimal", "join", "fo-maximal", "decompose"};
  return names;
}

inline constexpr int kDifferentPairs = 100;

/// The check behind a `verify` suite. Sampling uses instance_rng(seed, index).
inline InstanceCheck suite_check(const std::string& suite, std::uint64_t seed) {
  if (suite == "different") {
    return [seed](const TropMatrix& a, int k) {
      return check_different(Presentation(a), kDifferentPairs, instance_rng(seed, k)());
    };
  }
  if (suite == "minimal") {
    return [seed](const TropMatrix& a, int k) {
      auto rng = instance_rng(seed, k);
      const Presentation p(a);
      check_minimal(p, rng);
      check_extension_minimal(p, rng);
      return std::string(is_minimal(p) ? "MINIMAL" : "NOT_MINIMAL");
    };
  }
  if (suite == "join") {
    return [seed](const TropMatrix& a, int k) {
      auto rng = instance_rng(seed, k);
      check_join(Presentation(a), rng);
      return std::string();
    };
  }
  if (suite == "fo-maximal") {
    return [](const TropMatrix& a, int) {
      const Presentation p(a);
      check_fo_maximal(p);
      check_multiplicities(p);
      return std::string();
    };
  }
  if (suite == "decompose") {
    return [](const TropMatrix& a, int) {
      check_decompose(Presentation(a));
      return std::string();
    };
  }
  throw InputError("unknown suite \"" + suite + "\" (expected different, minimal, join, fo-maximal or decompose)");
}

inline SuiteReport run_suite(const std::string& suite, const CorpusSpec& spec, unsigned threads = 0) {
  const InstanceCheck check = suite_check(suite, spec.seed);
  return {suite, spec, run_checks(generate_corpus(spec), check, threads)};
}

/// `count` presentations cycling through every shape 1 <= d <= max_d,
/// d <= n <= max_n, drawn from one seeded stream.
inline std::vector<TropMatrix> mixed_corpus(std::uint64_t seed, int count, int max_n, int max_d, int min_extra = 0) {
  std::vector<std::pair<int, int>> shapes;
  for (int d = 1; d <= max_d; ++d) {
    for (int n = d + min_extra; n <= max_n; ++n) shapes.emplace_back(n, d);
  }
  if (shapes.empty()) throw InputError("no shapes within the given caps");
  std::mt19937_64 rng(seed);
  std::vector<TropMatrix> out;
  for (int k = 0; k < count; ++k) {
    CorpusSpec spec;
    std::tie(spec.n, spec.d) = shapes[k % shapes.size()];
    out.push_back(random_presentation_matrix(rng, spec));
  }
  return out;
}

}  // namespace tropmat
