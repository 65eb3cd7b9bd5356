#pragma once

// Exact feasibility of small systems of linear equations and weak
// inequalities over Q: Gaussian substitution for the equations, then
// Fourier-Motzkin elimination with back-substitution for a witness.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tropmat/errors.hpp"
#include "tropmat/trop.hpp"

namespace tropmat {

/// coef · v + constant.
struct Affine {
  std::vector<Rational> coef;
  Rational constant;

  explicit Affine(int nvars = 0) : coef(nvars) {}

  bool is_constant() const {
    return std::all_of(coef.begin(), coef.end(), [](const Rational& c) { return c == 0; });
  }

  Rational eval(const std::vector<Rational>& v) const {
    Rational s = constant;
    for (std::size_t k = 0; k < coef.size(); ++k) s += coef[k] * v[k];
    return s;
  }

  friend Affine operator-(Affine a, const Affine& b) {
    for (std::size_t k = 0; k < a.coef.size(); ++k) a.coef[k] -= b.coef[k];
    a.constant -= b.constant;
    return a;
  }
};

/// Equations e == 0 and inequalities g >= 0.
struct LinearSystem {
  int nvars = 0;
  std::vector<Affine> equations;
  std::vector<Affine> inequalities;
};

namespace detail {

// Scale so the first nonzero coefficient has absolute value 1; keeps the
// direction of an inequality.
inline Affine normalized(Affine a) {
  for (const Rational& c : a.coef) {
    if (c != 0) {
      const Rational s = abs(c);
      for (auto& x : a.coef) x /= s;
      a.constant /= s;
      return a;
    }
  }
  return a;
}

// Replace v by expr (which does not involve v) inside a.
inline Affine substitute(const Affine& a, int v, const Affine& expr) {
  if (a.coef[v] == 0) return a;
  Affine out = a;
  const Rational c = a.coef[v];
  out.coef[v] = 0;
  for (std::size_t k = 0; k < out.coef.size(); ++k) out.coef[k] += c * expr.coef[k];
  out.constant += c * expr.constant;
  return out;
}

inline std::vector<Affine> dedupe(std::vector<Affine> v) {
  for (auto& a : v) a = normalized(std::move(a));
  std::sort(v.begin(), v.end(), [](const Affine& x, const Affine& y) {
    return x.coef != y.coef ? x.coef < y.coef : x.constant < y.constant;
  });
  // Same direction: only the smallest constant (the tightest bound) matters.
  std::vector<Affine> out;
  for (auto& a : v) {
    if (!out.empty() && out.back().coef == a.coef) continue;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

/// A solution of the system, or nullopt if it is infeasible.
inline std::optional<std::vector<Rational>> solve(const LinearSystem& sys) {
  const int m = sys.nvars;
  std::vector<Affine> eqs = sys.equations, ineqs = sys.inequalities;
  // Gaussian substitution: subs[k] = (v, expr) with v = expr.
  std::vector<std::pair<int, Affine>> subs;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const Affine& eq = eqs[e];
    int pivot = -1;
    for (int k = 0; k < m && pivot < 0; ++k) {
      if (eq.coef[k] != 0) pivot = k;
    }
    if (pivot < 0) {
      if (eq.constant != 0) return std::nullopt;
      continue;
    }
    Affine expr(m);
    const Rational c = eq.coef[pivot];
    for (int k = 0; k < m; ++k) expr.coef[k] = k == pivot ? Rational(0) : Rational(-eq.coef[k] / c);
    expr.constant = -eq.constant / c;
    for (std::size_t f = e + 1; f < eqs.size(); ++f) eqs[f] = detail::substitute(eqs[f], pivot, expr);
    for (auto& g : ineqs) g = detail::substitute(g, pivot, expr);
    for (auto& [v, s] : subs) s = detail::substitute(s, pivot, expr);
    subs.emplace_back(pivot, expr);
  }

  std::vector<char> bound(m, 0);
  for (const auto& [v, s] : subs) bound[v] = 1;
  std::vector<int> order;
  for (int k = 0; k < m; ++k) {
    if (!bound[k]) order.push_back(k);
  }

  // Fourier-Motzkin; stages[s] holds the constraints before eliminating order[s].
  std::vector<std::vector<Affine>> stages;
  std::vector<Affine> cur = detail::dedupe(std::move(ineqs));
  for (int v : order) {
    stages.push_back(cur);
    std::vector<Affine> pos, neg, next;
    for (auto& g : cur) {
      if (g.coef[v] > 0) {
        pos.push_back(g);
      } else if (g.coef[v] < 0) {
        neg.push_back(g);
      } else {
        next.push_back(g);
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p/|p_v| + q/|q_v| cancels v.
        Affine r(m);
        const Rational a = p.coef[v], b = -q.coef[v];
        for (int k = 0; k < m; ++k) r.coef[k] = p.coef[k] / a + q.coef[k] / b;
        r.coef[v] = 0;
        r.constant = p.constant / a + q.constant / b;
        next.push_back(std::move(r));
      }
    }
    cur.clear();
    for (auto& g : next) {
      if (g.is_constant()) {
        if (g.constant < 0) return std::nullopt;
      } else {
        cur.push_back(std::move(g));
      }
    }
    cur = detail::dedupe(std::move(cur));
  }
  for (const auto& g : cur) {
    if (g.constant < 0) return std::nullopt;
  }

  std::vector<Rational> value(m);
  for (int s = static_cast<int>(order.size()) - 1; s >= 0; --s) {
    const int v = order[s];
    std::optional<Rational> lo, hi;
    for (const auto& g : stages[s]) {
      if (g.coef[v] == 0) continue;
      Affine rest = g;
      rest.coef[v] = 0;
      const Rational x = -rest.eval(value) / g.coef[v];
      if (g.coef[v] > 0) {
        if (!lo || x > *lo) lo = x;
      } else if (!hi || x < *hi) {
        hi = x;
      }
    }
    if (lo && hi && *lo > *hi) throw TheoremViolation("Fourier-Motzkin back-substitution found an empty interval");
    value[v] = lo ? *lo : (hi ? *hi : Rational(0));
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) value[it->first] = it->second.eval(value);

  for (const auto& e : sys.equations) {
    if (e.eval(value) != 0) throw TheoremViolation("linear solver witness violates an equation");
  }
  for (const auto& g : sys.inequalities) {
    if (g.eval(value) < 0) throw TheoremViolation("linear solver witness violates an inequality");
  }
  return value;
}

}  // namespace tropmat
