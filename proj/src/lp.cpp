#include "pooling/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace pooling {

namespace {

constexpr long kPivotCap = 2'000'000;

template <class T>
struct NumOps;

template <>
struct NumOps<Rational> {
  static Rational from(const Rational& r) { return r; }
  static int sign(const Rational& v) { return v.sign(); }
  static Rational to_rational(const Rational& v) { return v; }
};

template <>
struct NumOps<double> {
  static double from(const Rational& r) { return r.to_double(); }
  static int sign(double v) {
    if (v > kFloatTol) return 1;
    if (v < -kFloatTol) return -1;
    return 0;
  }
  static Rational to_rational(double v) { return Rational::from_double(v); }
};

// Dense two-phase simplex tableau. Column layout: the num_vars structural
// variables, then one slack/surplus per row, then one artificial per row
// that needs it, then the right-hand side. Two extra rows at the bottom
// carry the phase-2 and phase-1 reduced-cost rows; both are pivoted along
// so phase 2 can start without re-pricing.
template <class T>
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : n_(lp.num_vars) {
    using Ops = NumOps<T>;

    struct Row {
      std::vector<T> a;
      Relation rel;
      T b;
    };
    std::vector<Row> rows;
    rows.reserve(lp.rows.size() + static_cast<size_t>(lp.num_vars));
    for (const auto& r : lp.rows) {
      Row row;
      row.a.reserve(r.coeffs.size());
      for (const auto& c : r.coeffs) row.a.push_back(Ops::from(c));
      row.rel = r.rel;
      row.b = Ops::from(r.rhs);
      rows.push_back(std::move(row));
    }
    // Materialize finite upper bounds as plain rows.
    for (int i = 0; i < lp.num_vars && i < static_cast<int>(lp.upper.size()); ++i) {
      if (!lp.upper[i]) continue;
      Row row;
      row.a.assign(static_cast<size_t>(lp.num_vars), T(0));
      row.a[static_cast<size_t>(i)] = T(1);
      row.rel = Relation::LessEq;
      row.b = Ops::from(*lp.upper[i]);
      rows.push_back(std::move(row));
    }

    // Make all right-hand sides nonnegative.
    for (auto& r : rows) {
      if (Ops::sign(r.b) < 0) {
        for (auto& c : r.a) c = -c;
        r.b = -r.b;
        if (r.rel == Relation::LessEq) {
          r.rel = Relation::GreaterEq;
        } else if (r.rel == Relation::GreaterEq) {
          r.rel = Relation::LessEq;
        }
      }
    }

    m_ = static_cast<int>(rows.size());
    int n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
      if (r.rel != Relation::Eq) ++n_slack;
      if (r.rel != Relation::LessEq) ++n_art;
    }
    art_begin_ = n_ + n_slack;
    cols_ = n_ + n_slack + n_art;
    rhs_ = cols_;

    tab_.assign(static_cast<size_t>(m_ + 2), std::vector<T>(static_cast<size_t>(cols_ + 1), T(0)));
    basis_.assign(static_cast<size_t>(m_), -1);

    int slack = n_, art = art_begin_;
    for (int r = 0; r < m_; ++r) {
      auto& t = tab_[static_cast<size_t>(r)];
      for (int j = 0; j < n_; ++j) t[static_cast<size_t>(j)] = rows[static_cast<size_t>(r)].a[static_cast<size_t>(j)];
      t[static_cast<size_t>(rhs_)] = rows[static_cast<size_t>(r)].b;
      switch (rows[static_cast<size_t>(r)].rel) {
        case Relation::LessEq:
          t[static_cast<size_t>(slack)] = T(1);
          basis_[static_cast<size_t>(r)] = slack++;
          break;
        case Relation::GreaterEq:
          t[static_cast<size_t>(slack++)] = T(-1);
          t[static_cast<size_t>(art)] = T(1);
          basis_[static_cast<size_t>(r)] = art++;
          break;
        case Relation::Eq:
          t[static_cast<size_t>(art)] = T(1);
          basis_[static_cast<size_t>(r)] = art++;
          break;
      }
    }

    // Phase-2 cost row: the original objective (basic slacks cost 0, so it
    // is already priced out). Phase-1 cost row: sum of artificials, priced
    // out against the artificial basis.
    auto& cost2 = tab_[static_cast<size_t>(m_)];
    for (int j = 0; j < n_ && j < static_cast<int>(lp.objective.size()); ++j) {
      cost2[static_cast<size_t>(j)] = Ops::from(lp.objective[static_cast<size_t>(j)]);
    }
    auto& cost1 = tab_[static_cast<size_t>(m_ + 1)];
    for (int r = 0; r < m_; ++r) {
      if (basis_[static_cast<size_t>(r)] < art_begin_) continue;
      const auto& t = tab_[static_cast<size_t>(r)];
      for (int j = 0; j <= cols_; ++j) {
        if (j >= art_begin_ && j < rhs_) continue;  // artificial cols keep cost 0
        cost1[static_cast<size_t>(j)] -= t[static_cast<size_t>(j)];
      }
    }
  }

  LpResult run() {
    using Ops = NumOps<T>;
    LpResult res;

    // Phase 1: drive the artificial variables to zero.
    if (cols_ > art_begin_) {
      if (!optimize(m_ + 1, cols_)) {
        throw std::runtime_error("phase-1 simplex reported unbounded");
      }
      const T p1 = -tab_[static_cast<size_t>(m_ + 1)][static_cast<size_t>(rhs_)];
      if (Ops::sign(p1) > 0) {
        res.status = LpStatus::Infeasible;
        res.pivot_count = pivots_;
        return res;
      }
      evict_artificials();
    }

    // Phase 2 over structural and slack columns only.
    const bool bounded = optimize(m_, art_begin_);
    res.pivot_count = pivots_;
    if (!bounded) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.value = Ops::to_rational(-tab_[static_cast<size_t>(m_)][static_cast<size_t>(rhs_)]);
    res.point.assign(static_cast<size_t>(n_), Rational(0));
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[static_cast<size_t>(r)];
      if (b < n_) res.point[static_cast<size_t>(b)] = Ops::to_rational(tab_[static_cast<size_t>(r)][static_cast<size_t>(rhs_)]);
    }
    return res;
  }

 private:
  // Bland's rule: entering column is the lowest-index one with a negative
  // reduced cost; the leaving row minimizes the ratio, ties broken by the
  // lowest basic variable index. Returns false on an unbounded direction.
  bool optimize(int cost_row, int col_limit) {
    using Ops = NumOps<T>;
    for (;;) {
      const auto& cost = tab_[static_cast<size_t>(cost_row)];
      int enter = -1;
      for (int j = 0; j < col_limit; ++j) {
        if (Ops::sign(cost[static_cast<size_t>(j)]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      T best_ratio{};
      for (int r = 0; r < m_; ++r) {
        const T& piv = tab_[static_cast<size_t>(r)][static_cast<size_t>(enter)];
        if (Ops::sign(piv) <= 0) continue;
        T ratio = tab_[static_cast<size_t>(r)][static_cast<size_t>(rhs_)] / piv;
        if (leave < 0 || Ops::sign(ratio - best_ratio) < 0 ||
            (Ops::sign(ratio - best_ratio) == 0 &&
             basis_[static_cast<size_t>(r)] < basis_[static_cast<size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    if (++pivots_ > kPivotCap) {
      throw std::runtime_error("simplex pivot cap exceeded");
    }
    auto& prow = tab_[static_cast<size_t>(row)];
    const T inv = T(1) / prow[static_cast<size_t>(col)];
    for (auto& c : prow) c = c * inv;
    prow[static_cast<size_t>(col)] = T(1);  // scrub float residue
    for (int r = 0; r < m_ + 2; ++r) {
      if (r == row) continue;
      auto& t = tab_[static_cast<size_t>(r)];
      const T factor = t[static_cast<size_t>(col)];
      if (factor == T(0)) continue;
      for (int j = 0; j <= cols_; ++j) {
        t[static_cast<size_t>(j)] -= factor * prow[static_cast<size_t>(j)];
      }
      t[static_cast<size_t>(col)] = T(0);
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  // After phase 1, pivot any artificial still in the basis (necessarily at
  // value zero) onto a structural or slack column. Rows with no such column
  // are redundant and stay inert: no later pivot can touch them since
  // artificial columns never re-enter.
  void evict_artificials() {
    using Ops = NumOps<T>;
    for (int r = 0; r < m_; ++r) {
      if (basis_[static_cast<size_t>(r)] < art_begin_) continue;
      for (int j = 0; j < art_begin_; ++j) {
        if (Ops::sign(tab_[static_cast<size_t>(r)][static_cast<size_t>(j)]) != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  int n_ = 0;          // structural variables
  int m_ = 0;          // rows (including materialized bounds)
  int cols_ = 0;       // structural + slack + artificial
  int art_begin_ = 0;  // first artificial column
  int rhs_ = 0;        // right-hand-side column index
  long pivots_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, Mode mode) {
  if (mode == Mode::Exact) {
    return Simplex<Rational>(lp).run();
  }
  return Simplex<double>(lp).run();
}

SlackResult solve_max_min_slack(int dim, const std::vector<SlackRow>& rows,
                                SlackDomain domain) {
  SlackResult res;

  if (dim == 0) {
    // R^0 has the single point 0, so every row is a constant sign condition:
    // a weak row holds iff b >= 0, a strict row's slack is -b.
    Rational t = Rational(1);
    bool ok = true;
    for (const auto& r : rows) {
      if (r.strict) {
        t = std::min(t, -r.b);
        if (r.b.sign() > 0) ok = false;
      } else if (r.b.sign() < 0) {
        ok = false;
      }
    }
    res.weak_feasible = ok;
    res.t_star = ok ? std::max(t, Rational(0)) : Rational(0);
    return res;
  }

  const bool free_vars = domain == SlackDomain::Free;
  const int zcols = free_vars ? 2 * dim : dim;  // free z split as z+ - z-
  const int tcol = zcols;

  LinearProgram lp;
  lp.num_vars = zcols + 1;
  lp.objective.assign(static_cast<size_t>(lp.num_vars), Rational(0));
  lp.objective[static_cast<size_t>(tcol)] = Rational(-1);  // maximize t
  lp.upper.assign(static_cast<size_t>(lp.num_vars), std::nullopt);
  lp.upper[static_cast<size_t>(tcol)] = Rational(1);

  auto make_row = [&](const std::vector<Rational>& a, const Rational& tcoef,
                      Relation rel, const Rational& b) {
    LpRow row;
    row.coeffs.assign(static_cast<size_t>(lp.num_vars), Rational(0));
    for (int i = 0; i < dim; ++i) {
      row.coeffs[static_cast<size_t>(i)] = a[static_cast<size_t>(i)];
      if (free_vars) row.coeffs[static_cast<size_t>(dim + i)] = -a[static_cast<size_t>(i)];
    }
    row.coeffs[static_cast<size_t>(tcol)] = tcoef;
    row.rel = rel;
    row.rhs = b;
    lp.rows.push_back(std::move(row));
  };

  for (const auto& r : rows) {
    if (!r.strict) {
      make_row(r.a, Rational(0), Relation::LessEq, r.b);
      continue;
    }
    // Scale strict rows to unit max-norm so the slack t measures all of
    // them on a common footing.
    Rational scale(0);
    for (const auto& c : r.a) scale = std::max(scale, c.abs());
    std::vector<Rational> a = r.a;
    Rational b = r.b;
    if (scale.sign() > 0) {
      for (auto& c : a) c /= scale;
      b /= scale;
    }
    // a . z - t >= b
    make_row(a, Rational(-1), Relation::GreaterEq, b);
  }

  if (domain == SlackDomain::Simplex) {
    std::vector<Rational> ones(static_cast<size_t>(dim), Rational(1));
    make_row(ones, Rational(0), Relation::LessEq, Rational(1));
  }

  const LpResult lpres = solve_lp(lp, Mode::Exact);
  if (lpres.status == LpStatus::Infeasible) return res;
  if (lpres.status != LpStatus::Optimal) {
    throw std::logic_error("slack program cannot be unbounded: t is capped at 1");
  }

  res.weak_feasible = true;
  res.t_star = -lpres.value;
  res.witness.resize(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    res.witness[static_cast<size_t>(i)] = lpres.point[static_cast<size_t>(i)];
    if (free_vars) res.witness[static_cast<size_t>(i)] -= lpres.point[static_cast<size_t>(dim + i)];
  }
  return res;
}

}  // namespace pooling
