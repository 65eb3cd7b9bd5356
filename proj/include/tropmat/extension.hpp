#pragma once

// Single-element transversal extensions Stiefel(A|x). The new element * is
// the column index n, so extensions live on the universe {0..n}.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/matrix.hpp"
#include "tropmat/presentation.hpp"
#include "tropmat/random.hpp"
#include "tropmat/subset.hpp"
#include "tropmat/trop.hpp"
#include "tropmat/valuated.hpp"

namespace tropmat {

/// Entries of the new column, one per row. All-inf makes * a loop.
using ExtensionColumn = std::vector<Trop>;

/// mu' \ * for a function on {0..n} whose last element is *, as a function on {0..n-1}.
inline SubsetFunction delete_star(const SubsetFunction& f) {
  const int n = f.universe() - 1;
  if (f.ground() != full_set(n + 1)) throw InputError("extension must live on the full ground set");
  std::map<Subset, Trop> v;
  for (Subset b : k_subsets(full_set(n), f.rank())) v.emplace(b, f[b]);
  return SubsetFunction(n, full_set(n), f.rank(), v);
}

/// An extension representative pinned so that its *-free values equal the
/// reference representative exactly.
class NormalizedExtension {
 public:
  NormalizedExtension(ValuatedMatroid values, std::shared_ptr<const ValuatedMatroid> reference)
      : values_(std::move(values)), reference_(std::move(reference)) {
    if (values_.universe() != reference_->universe() + 1 || values_.rank() != reference_->rank()) {
      throw InputError("extension and reference have incompatible shapes");
    }
    if (delete_star(values_.function()) != reference_->function()) {
      throw InputError("extension does not restrict to the reference representative");
    }
  }

  const ValuatedMatroid& values() const { return values_; }
  const ValuatedMatroid& reference() const { return *reference_; }
  std::shared_ptr<const ValuatedMatroid> reference_ptr() const { return reference_; }
  int star() const { return values_.universe() - 1; }

  friend bool operator==(const NormalizedExtension& a, const NormalizedExtension& b) {
    return a.values_ == b.values_ && a.reference() == b.reference();
  }

 private:
  ValuatedMatroid values_;
  std::shared_ptr<const ValuatedMatroid> reference_;
};

/// Stiefel(A|x), with the *-containing minors computed twice: directly, and
/// as min over rows i of (minor of A on rows [d]-i and columns J) + x_i.
inline NormalizedExtension extend(const Presentation& a, const ExtensionColumn& x) {
  const TropMatrix ax = a.matrix().append_column(x);
  const SubsetFunction direct = stiefel_function(ax);
  const int d = a.rows(), n = a.cols();
  MinorTable minors(a.matrix());
  for (Subset j : k_subsets(full_set(n), d - 1)) {
    Trop via_rows;
    for (int i = 0; i < d; ++i) via_rows = trop_add(via_rows, minors(full_set(d) ^ singleton(i), j) + x[i]);
    if (via_rows != direct[j | singleton(n)]) {
      throw TheoremViolation("row expansion of a *-minor disagrees with the direct minor");
    }
  }
  auto ref = std::make_shared<const ValuatedMatroid>(a.mu());
  try {
    return NormalizedExtension(ValuatedMatroid(direct), std::move(ref));
  } catch (const InputError& e) {
    throw TheoremViolation(std::string("extension is not a valuated matroid: ") + e.what());
  }
}

/// A basis B ∋ * of the extension whose every matching sends * to `row`, so
/// that Stiefel(A|x)_B = a + x_row for all x.
struct CertificateBasis {
  int row = 0;
  Subset basis = 0;  // includes *
  Trop offset;       // a
};

/// One certificate per row of a minimal presentation:
/// B_i = J_i ∪ H_i ∪ {*} with H_i = E(M_i) \ supp(A_i) and J_i the
/// lexicographically least basis of the underlying matroid on E \ E(M_i).
inline std::vector<CertificateBasis> certificate_bases(const Presentation& a) {
  const ApexDecomposition dec = decompose(a, compute_dapx(a));
  if (!is_minimal(a, dec)) throw InputError("certificate bases need a minimal presentation");
  const int d = a.rows(), star = a.cols();
  MinorTable minors(a.matrix());
  std::vector<CertificateBasis> out;
  for (int i = 0; i < d; ++i) {
    const ApexRow& r = dec.rows[i];
    const Subset h = r.matroid.ground() & ~a.matrix().row(i).support();
    const Subset j = lex_least_basis(a.mu().underlying(), r.flat);
    const Subset core = j | h;
    if (size_of(core) != d - 1) throw TheoremViolation("certificate basis has the wrong size");
    const Trop offset = minors(full_set(d) ^ singleton(i), core);
    if (offset.is_inf()) throw TheoremViolation("certificate basis has no matching through its row");
    for (int other = 0; other < d; ++other) {
      if (other != i && minors(full_set(d) ^ singleton(other), core).is_finite()) {
        throw TheoremViolation("certificate basis admits a matching sending * elsewhere");
      }
    }
    out.push_back({i, core | singleton(star), offset});
  }
  return out;
}

/// x read back from an extension through the certificates: x_i = mu'_{B_i} - a_i.
inline ExtensionColumn recover_column(const NormalizedExtension& e, const std::vector<CertificateBasis>& certs) {
  ExtensionColumn x(certs.size());
  for (const auto& c : certs) x[c.row] = e.values()[c.basis] - c.offset;
  return x;
}

struct Collision {
  int row = 0;
  ExtensionColumn x, y;
};

/// For a non-minimal presentation: a row i whose E(M_i) \ supp(A_i) is not a
/// hyperplane, and two columns t·e_i past the point where every *-minor
/// min(a + t, b) has stabilized at b.
inline Collision nonminimal_collision(const Presentation& a) {
  const ApexDecomposition dec = decompose(a, compute_dapx(a));
  if (is_minimal(a, dec)) throw InputError("collision needs a non-minimal presentation");
  const int d = a.rows(), n = a.cols();
  int row = -1;
  for (int i = 0; i < d && row < 0; ++i) {
    const Matroid& m = dec.rows[i].matroid;
    if (!is_hyperplane(m, m.ground() & ~a.matrix().row(i).support())) row = i;
  }
  MinorTable minors(a.matrix());
  Rational threshold(0);
  for (Subset j : k_subsets(full_set(n), d - 1)) {
    const Trop coef = minors(full_set(d) ^ singleton(row), j);
    Trop constant;
    for (int r = 0; r < d; ++r) {
      if (r != row) constant = trop_add(constant, minors(full_set(d) ^ singleton(r), j));
    }
    if (coef.is_finite() && constant.is_inf()) {
      throw TheoremViolation("a *-minor depends on t with no constant term");
    }
    if (coef.is_finite() && constant.is_finite()) {
      const Rational gap = constant.value() - coef.value();
      if (gap > threshold) threshold = gap;
    }
  }
  Collision c{row, ExtensionColumn(d, Trop(0)), ExtensionColumn(d, Trop(0))};
  c.x[row] = Trop(Rational(threshold + 1));
  c.y[row] = Trop(Rational(threshold + 2));
  if (!(extend(a, c.x) == extend(a, c.y))) throw TheoremViolation("stabilized extensions differ");
  return c;
}

enum class InjectivityKind { kInjective, kCollision };

struct InjectivityVerdict {
  InjectivityKind kind;
  std::vector<CertificateBasis> certificates;  // when injective
  std::optional<Collision> collision;          // when not
  int sampled_pairs = 0;
};

/// Minimal: certificates plus `trials` sampled pairs x != y with distinct
/// extensions and exact recovery of x. Non-minimal: a verified collision.
inline InjectivityVerdict extensions_injective(const Presentation& a, int trials, std::uint64_t seed) {
  const ApexDecomposition dec = decompose(a, compute_dapx(a));
  if (!is_minimal(a, dec)) return {InjectivityKind::kCollision, {}, nonminimal_collision(a), 0};
  InjectivityVerdict v{InjectivityKind::kInjective, certificate_bases(a), std::nullopt, 0};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const ExtensionColumn x = random_column(rng, a.rows());
    ExtensionColumn y = random_column(rng, a.rows());
    while (y == x) y = random_column(rng, a.rows());
    const NormalizedExtension ex = extend(a, x), ey = extend(a, y);
    if (ex == ey) throw TheoremViolation("distinct columns gave equal extensions of a minimal presentation");
    if (recover_column(ex, v.certificates) != x || recover_column(ey, v.certificates) != y) {
      throw TheoremViolation("certificate readout did not recover the column");
    }
    ++v.sampled_pairs;
  }
  return v;
}

/// Coordinatewise min of two normalized extensions with the same reference.
inline SubsetFunction min_of_extensions(const NormalizedExtension& a, const NormalizedExtension& b) {
  if (!(a.reference() == b.reference())) throw InputError("extensions are normalized to different references");
  return trop_add(a.values().function(), b.values().function());
}

/// Stiefel(A|min(x,y)), checked against the coordinatewise min of the two
/// normalized extensions.
inline NormalizedExtension meet(const Presentation& a, const ExtensionColumn& x, const ExtensionColumn& y) {
  if (x.size() != y.size()) throw InputError("columns of different lengths");
  ExtensionColumn z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = trop_add(x[i], y[i]);
  NormalizedExtension m = extend(a, z);
  if (m.values().function() != min_of_extensions(extend(a, x), extend(a, y))) {
    throw TheoremViolation("meet differs from the coordinatewise min");
  }
  return m;
}

/// mu' <= mu'' coordinatewise, both pinned to the same reference.
inline bool poset_leq(const NormalizedExtension& a, const NormalizedExtension& b) {
  if (!(a.reference() == b.reference())) throw InputError("extensions are normalized to different references");
  const auto& va = a.values().function().values();
  const auto& vb = b.values().function().values();
  for (std::size_t k = 0; k < va.size(); ++k) {
    if (vb[k] < va[k]) return false;
  }
  return true;
}

struct MinimalExtensionPresentation {
  TropMatrix a;        // minimal presentation of mu' \ *
  ExtensionColumn x;
  TropMatrix combined; // (A|x)
};

/// (A|x) presenting mu' with A a minimal presentation of mu' \ *, obtained by
/// minimizing `b` while keeping * in every row that has it.
inline MinimalExtensionPresentation present_extension_minimally(const ValuatedMatroid& mu_ext, const Presentation& b) {
  if (!(b.mu() == mu_ext)) throw InputError("matrix does not present the given extension");
  const int star = mu_ext.universe() - 1;
  if (contains(coloops(mu_ext.underlying()), star)) throw InputError("rank-increasing extension out of scope");
  const Presentation minimal = minimize(b, star);
  MinimalExtensionPresentation out{minimal.matrix().drop_last_column(), minimal.matrix().column(star),
                                   minimal.matrix()};
  const Presentation base(out.a);
  if (base.mu().function() != delete_star(mu_ext.function())) {
    throw TheoremViolation("A does not present mu' \\ *");
  }
  if (!is_minimal(base)) throw TheoremViolation("A is not a minimal presentation of mu' \\ *");
  if (stiefel_function(out.combined) != mu_ext.function()) throw TheoremViolation("Stiefel(A|x) differs from mu'");
  return out;
}

}  // namespace tropmat
