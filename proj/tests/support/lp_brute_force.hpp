#pragma once

// Test-only LP oracle: enumerates basic solutions outright instead of
// pivoting, so it shares no code path with the simplex implementation it
// checks. A vertex of { x >= 0, rows, bounds } is the unique solution of
// some num_vars-subset of constraints taken as equalities; the optimum of a
// feasible bounded program is the best feasible vertex. Unboundedness is
// decided by comparing the optimum under two huge artificial boxes: the
// boxed value keeps improving iff the true program is unbounded.

#include <optional>
#include <vector>

#include "pooling/lp.hpp"

namespace pooling::testsupport {

struct BruteForceLp {
  LpStatus status = LpStatus::Infeasible;
  Rational value;  // meaningful when Optimal
};

namespace detail {

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel;
  Rational rhs;
};

// Unique solution of the square system "active constraints as equalities",
// or nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(
    const std::vector<const Constraint*>& active, int n) {
  std::vector<std::vector<Rational>> a(static_cast<size_t>(n),
                                       std::vector<Rational>(static_cast<size_t>(n + 1)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a[r][c] = active[static_cast<size_t>(r)]->coeffs[static_cast<size_t>(c)];
    a[r][static_cast<size_t>(n)] = active[static_cast<size_t>(r)]->rhs;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
    const Rational inv = Rational(1) / a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int c = col; c <= n; ++c) a[static_cast<size_t>(col)][static_cast<size_t>(c)] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int c = col; c <= n; ++c) {
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
      }
    }
  }
  std::vector<Rational> x(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) x[static_cast<size_t>(r)] = a[static_cast<size_t>(r)][static_cast<size_t>(n)];
  return x;
}

inline bool satisfies(const std::vector<Constraint>& cons, const std::vector<Rational>& x) {
  for (const auto& c : cons) {
    Rational lhs;
    for (size_t i = 0; i < x.size(); ++i) lhs += c.coeffs[i] * x[i];
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Eq:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

// Best feasible vertex value, or nullopt when there is none (infeasible).
inline std::optional<Rational> best_vertex(const LinearProgram& lp,
                                           const std::optional<Rational>& box) {
  const int n = lp.num_vars;
  std::vector<Constraint> cons;
  for (const auto& r : lp.rows) cons.push_back({r.coeffs, r.rel, r.rhs});
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> e(static_cast<size_t>(n), Rational(0));
    e[static_cast<size_t>(i)] = Rational(1);
    cons.push_back({e, Relation::GreaterEq, Rational(0)});
    if (i < static_cast<int>(lp.upper.size()) && lp.upper[static_cast<size_t>(i)]) {
      cons.push_back({e, Relation::LessEq, *lp.upper[static_cast<size_t>(i)]});
    }
  }
  if (box) {
    cons.push_back({std::vector<Rational>(static_cast<size_t>(n), Rational(1)),
                    Relation::LessEq, *box});
  }

  const int total = static_cast<int>(cons.size());
  std::optional<Rational> best;
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  if (n > total) return std::nullopt;
  for (;;) {
    std::vector<const Constraint*> active;
    for (int i : idx) active.push_back(&cons[static_cast<size_t>(i)]);
    if (auto x = solve_square(active, n); x && satisfies(cons, *x)) {
      Rational obj;
      for (int i = 0; i < n && i < static_cast<int>(lp.objective.size()); ++i) {
        obj += lp.objective[static_cast<size_t>(i)] * (*x)[static_cast<size_t>(i)];
      }
      if (!best || obj < *best) best = obj;
    }
    int i = n - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == total - n + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace detail

inline BruteForceLp solve_lp_brute_force(const LinearProgram& lp) {
  bool all_bounded = static_cast<int>(lp.upper.size()) >= lp.num_vars;
  for (int i = 0; all_bounded && i < lp.num_vars; ++i) {
    if (!lp.upper[static_cast<size_t>(i)]) all_bounded = false;
  }

  BruteForceLp res;
  if (all_bounded) {
    if (auto v = detail::best_vertex(lp, std::nullopt)) {
      res.status = LpStatus::Optimal;
      res.value = *v;
    }
    return res;
  }

  // Coefficients in the test corpus are tiny, so vertex coordinates are
  // dwarfed by these boxes; the boxed optimum moves iff a ray improves.
  const Rational big = Rational::from_decimal("1e24");
  const auto v1 = detail::best_vertex(lp, big);
  if (!v1) return res;
  const auto v2 = detail::best_vertex(lp, big * Rational(2));
  if (*v2 < *v1) {
    res.status = LpStatus::Unbounded;
  } else {
    res.status = LpStatus::Optimal;
    res.value = *v1;
  }
  return res;
}

}  // namespace pooling::testsupport
