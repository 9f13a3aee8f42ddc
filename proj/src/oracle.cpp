#include "pooling/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pooling/lp.hpp"

namespace pooling {

namespace {

// Restricted program for one output subset, built from the model directly.
// This intentionally duplicates none of the solver's construction: variables
// exist only for the subset's outputs and no padding rows are added.
LpResult solve_subset(const PoolingInstance& inst, const std::vector<int>& subset,
                      Mode mode) {
  const int m = inst.m;
  const int s = static_cast<int>(subset.size());

  LinearProgram lp;
  lp.num_vars = m + s;
  for (int i = 0; i < m; ++i) lp.objective.push_back(inst.c_in[static_cast<size_t>(i)]);
  for (int j : subset) lp.objective.push_back(inst.c_out[static_cast<size_t>(j)]);
  for (int i = 0; i < m; ++i) lp.upper.push_back(inst.u_in[static_cast<size_t>(i)]);
  for (int j : subset) lp.upper.push_back(inst.u_out[static_cast<size_t>(j)]);

  auto blank = [&] {
    LpRow row;
    row.coeffs.assign(static_cast<size_t>(lp.num_vars), Rational(0));
    row.rel = Relation::LessEq;
    return row;
  };

  {
    LpRow row = blank();  // inflow equals outflow
    row.rel = Relation::Eq;
    for (int i = 0; i < m; ++i) row.coeffs[static_cast<size_t>(i)] = Rational(1);
    for (int t = 0; t < s; ++t) row.coeffs[static_cast<size_t>(m + t)] = Rational(-1);
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < m; ++i) {
    LpRow row = blank();
    row.coeffs[static_cast<size_t>(i)] = Rational(1);
    row.rhs = inst.cap_in[static_cast<size_t>(i)];
    lp.rows.push_back(std::move(row));
  }
  {
    LpRow row = blank();
    for (int i = 0; i < m; ++i) row.coeffs[static_cast<size_t>(i)] = Rational(1);
    row.rhs = inst.cap_pool;
    lp.rows.push_back(std::move(row));
  }
  for (int t = 0; t < s; ++t) {
    LpRow row = blank();
    row.coeffs[static_cast<size_t>(m + t)] = Rational(1);
    row.rhs = inst.cap_out[static_cast<size_t>(subset[static_cast<size_t>(t)])];
    lp.rows.push_back(std::move(row));
  }
  // Served outputs must tolerate the blend: sum_i lambda_ik x_i <= mu_jk sum_i x_i.
  for (int j : subset) {
    for (int k = 0; k < inst.q; ++k) {
      LpRow row = blank();
      for (int i = 0; i < m; ++i) {
        row.coeffs[static_cast<size_t>(i)] =
            inst.lambda[static_cast<size_t>(i)][static_cast<size_t>(k)] -
            inst.mu[static_cast<size_t>(j)][static_cast<size_t>(k)];
      }
      lp.rows.push_back(std::move(row));
    }
  }

  return solve_lp(lp, mode);
}

}  // namespace

Solution solve_by_subset_enumeration(const PoolingInstance& inst,
                                     const OracleOptions& opts) {
  {
    ValidationReport rep = validate(inst);
    if (!rep.ok()) throw ValidationError(std::move(rep));
  }
  if (inst.n > opts.max_outputs) {
    std::ostringstream os;
    os << "n = " << inst.n << " exceeds the subset-enumeration guard "
       << opts.max_outputs << " (2^n programs)";
    throw GuardError(os.str());
  }

  Solution best;
  best.mode = opts.mode;
  best.value = Rational(0);
  best.flow.x.assign(static_cast<size_t>(inst.m), Rational(0));
  best.flow.y.assign(static_cast<size_t>(inst.n), Rational(0));

  const unsigned long count = 1ul << inst.n;
  for (unsigned long mask = 0; mask < count; ++mask) {
    std::vector<int> subset;
    for (int j = 0; j < inst.n; ++j) {
      if (mask & (1ul << j)) subset.push_back(j);
    }
    const LpResult res = solve_subset(inst, subset, opts.mode);
    ++best.stats.lps;
    best.stats.pivots += res.pivot_count;
    if (res.status != LpStatus::Optimal) {
      throw std::logic_error("subset program must be solvable: the zero flow is feasible");
    }

    const bool better =
        res.value < best.value ||
        (res.value == best.value &&
         std::lexicographical_compare(subset.begin(), subset.end(),
                                      best.chosen_outputs.begin(),
                                      best.chosen_outputs.end()));
    if (better) {
      best.value = res.value;
      best.chosen_outputs = subset;
      best.flow.x.assign(res.point.begin(), res.point.begin() + inst.m);
      best.flow.y.assign(static_cast<size_t>(inst.n), Rational(0));
      for (size_t t = 0; t < subset.size(); ++t) {
        best.flow.y[static_cast<size_t>(subset[t])] = res.point[static_cast<size_t>(inst.m) + t];
      }
    }
  }
  return best;
}

GridScanResult grid_scan(const PoolingInstance& inst, int resolution, Mode mode) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");

  const PreprocessResult pre = preprocess(inst);
  const PoolingInstance& red = pre.instance;
  const int dim = red.m - 1;
  const auto hps = build_hyperplanes(red);

  GridScanResult res;
  bool first = true;

  std::vector<Rational> z(static_cast<size_t>(dim));
  std::function<void(int, int)> sweep = [&](int pos, int budget) {
    if (pos == dim) {
      if (red.n > 0) {
        const FixedRatioResult fr = solve_fixed_ratio(red, z, mode);
        if (first || fr.value < res.best_value) {
          first = false;
          res.best_value = fr.value;
          res.best_z = z;
        }
      } else if (first) {
        first = false;
        res.best_value = Rational(0);
        res.best_z = z;
      }
      res.sign_vectors_seen.insert(classify_point(z, hps, red.n, red.q));
      ++res.points;
      return;
    }
    for (int t = 0; t <= budget; ++t) {
      z[static_cast<size_t>(pos)] = Rational(t, resolution);
      sweep(pos + 1, budget - t);
    }
  };
  sweep(0, resolution);
  return res;
}

int default_grid_resolution(int m) { return m <= 3 ? 16 : 8; }

ValidationReport verify_solution(const PoolingInstance& inst, const Solution& sol) {
  ValidationReport rep = check_flow_feasible(inst, sol.flow, Mode::Exact);
  ValidationReport quality = check_quality_feasible(inst, sol.flow, Mode::Exact);
  rep.violations.insert(rep.violations.end(), quality.violations.begin(),
                        quality.violations.end());

  if (sol.flow.x.size() == static_cast<size_t>(inst.m) &&
      sol.flow.y.size() == static_cast<size_t>(inst.n)) {
    const Rational actual = objective(inst, sol.flow);
    if (actual != sol.value) {
      rep.violations.push_back(
          {"objective-mismatch", "value", {}, (actual - sol.value).abs()});
    }
  }
  return rep;
}

}  // namespace pooling
