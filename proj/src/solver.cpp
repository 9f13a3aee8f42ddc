#include "pooling/solver.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pooling {

namespace {

Flow flow_from_point(const std::vector<Rational>& point, int m, int n) {
  Flow f;
  f.x.assign(point.begin(), point.begin() + m);
  f.y.assign(point.begin() + m, point.begin() + m + n);
  return f;
}

}  // namespace

LinearProgram build_lp_for_outputs(const PoolingInstance& inst,
                                   const std::vector<int>& chosen) {
  const int m = inst.m, n = inst.n, q = inst.q;
  std::vector<char> in_set(static_cast<size_t>(n), 0);
  for (int j : chosen) in_set[static_cast<size_t>(j)] = 1;

  LinearProgram lp;
  lp.num_vars = m + n;
  lp.objective.reserve(static_cast<size_t>(m + n));
  for (int i = 0; i < m; ++i) lp.objective.push_back(inst.c_in[static_cast<size_t>(i)]);
  for (int j = 0; j < n; ++j) lp.objective.push_back(inst.c_out[static_cast<size_t>(j)]);

  // Arc capacities are variable bounds; excluded outputs are pinned to 0.
  lp.upper.reserve(static_cast<size_t>(m + n));
  for (int i = 0; i < m; ++i) lp.upper.push_back(inst.u_in[static_cast<size_t>(i)]);
  for (int j = 0; j < n; ++j) {
    lp.upper.push_back(in_set[static_cast<size_t>(j)] ? inst.u_out[static_cast<size_t>(j)]
                                                      : Rational(0));
  }

  auto zero_row = [&] {
    LpRow row;
    row.coeffs.assign(static_cast<size_t>(m + n), Rational(0));
    row.rel = Relation::LessEq;
    row.rhs = Rational(0);
    return row;
  };

  // Conservation at the pool over the admitted outputs.
  {
    LpRow row = zero_row();
    row.rel = Relation::Eq;
    for (int i = 0; i < m; ++i) row.coeffs[static_cast<size_t>(i)] = Rational(1);
    for (int j = 0; j < n; ++j) {
      if (in_set[static_cast<size_t>(j)]) row.coeffs[static_cast<size_t>(m + j)] = Rational(-1);
    }
    lp.rows.push_back(std::move(row));
  }
  // Input vertex capacities.
  for (int i = 0; i < m; ++i) {
    LpRow row = zero_row();
    row.coeffs[static_cast<size_t>(i)] = Rational(1);
    row.rhs = inst.cap_in[static_cast<size_t>(i)];
    lp.rows.push_back(std::move(row));
  }
  // Pool vertex capacity.
  {
    LpRow row = zero_row();
    for (int i = 0; i < m; ++i) row.coeffs[static_cast<size_t>(i)] = Rational(1);
    row.rhs = inst.cap_pool;
    lp.rows.push_back(std::move(row));
  }
  // Output vertex capacities.
  for (int j = 0; j < n; ++j) {
    LpRow row = zero_row();
    row.coeffs[static_cast<size_t>(m + j)] = Rational(1);
    row.rhs = inst.cap_out[static_cast<size_t>(j)];
    lp.rows.push_back(std::move(row));
  }
  // Quality rows, output-major; excluded outputs keep a trivially true row
  // so the program shape is independent of the chosen set.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < q; ++k) {
      LpRow row = zero_row();
      if (in_set[static_cast<size_t>(j)]) {
        for (int i = 0; i < m; ++i) {
          row.coeffs[static_cast<size_t>(i)] =
              inst.lambda[static_cast<size_t>(i)][static_cast<size_t>(k)] -
              inst.mu[static_cast<size_t>(j)][static_cast<size_t>(k)];
        }
      }
      lp.rows.push_back(std::move(row));
    }
  }

  assert(static_cast<int>(lp.rows.size()) == m + n * (q + 1) + 2);
  return lp;
}

LpResult val(const PoolingInstance& inst, const std::vector<int>& chosen, Mode mode) {
  return solve_lp(build_lp_for_outputs(inst, chosen), mode);
}

FixedRatioResult solve_fixed_ratio(const PoolingInstance& inst,
                                   std::span<const Rational> z, Mode mode) {
  const int m = inst.m, n = inst.n;
  if (static_cast<int>(z.size()) != m - 1) {
    throw std::invalid_argument("ratio point must have m-1 coordinates");
  }

  const auto hps = build_hyperplanes(inst);
  const SignVector eps = classify_point(z, hps, n, inst.q);

  FixedRatioResult res;
  res.reachable = reachable_outputs(eps);

  LinearProgram lp = build_lp_for_outputs(inst, res.reachable);
  // Pin the input proportions: x_i = z_i * (x_1 + ... + x_m), with the last
  // ratio implied by the others.
  for (int i = 0; i < m; ++i) {
    const Rational zi = [&] {
      if (i < m - 1) return z[static_cast<size_t>(i)];
      Rational last(1);
      for (const auto& c : z) last -= c;
      return last;
    }();
    LpRow row;
    row.coeffs.assign(static_cast<size_t>(m + n), Rational(0));
    for (int i2 = 0; i2 < m; ++i2) {
      row.coeffs[static_cast<size_t>(i2)] = (i2 == i ? Rational(1) : Rational(0)) - zi;
    }
    row.rel = Relation::Eq;
    row.rhs = Rational(0);
    lp.rows.push_back(std::move(row));
  }

  const LpResult lpres = solve_lp(lp, mode);
  if (lpres.status != LpStatus::Optimal) {
    throw std::logic_error("fixed-ratio program must be solvable: the zero flow is feasible");
  }
  res.value = lpres.value;
  res.flow = flow_from_point(lpres.point, m, n);
  return res;
}

Solution solve_pooling(const PoolingInstance& inst, const SolveOptions& opts) {
  {
    ValidationReport rep = validate(inst);
    if (!rep.ok()) throw ValidationError(std::move(rep));
  }
  if (inst.m > opts.max_inputs) {
    std::ostringstream os;
    os << "m = " << inst.m << " exceeds the input ceiling " << opts.max_inputs
       << "; the cell count grows as n^(m-1), raise max_inputs deliberately";
    throw GuardError(os.str());
  }

  const PreprocessResult pre = preprocess(inst);
  const PoolingInstance& red = pre.instance;

  Solution sol;
  sol.mode = opts.mode;
  sol.removed_outputs = pre.removed;
  // The zero flow is always feasible and is the candidate of last resort;
  // its output set (empty) is also the lexicographic tie-break floor.
  sol.value = Rational(0);
  sol.flow.x.assign(static_cast<size_t>(inst.m), Rational(0));
  sol.flow.y.assign(static_cast<size_t>(inst.n), Rational(0));
  sol.chosen_outputs = {};

  if (red.n == 0) return sol;

  const auto hps = build_hyperplanes(red);
  const auto cells = enumerate_cells(hps, red.m, red.n, red.q,
                                     {.restrict_to_simplex = true});
  sol.stats.cells = static_cast<long>(cells.size());

  std::set<std::vector<int>> output_sets;
  for (const auto& cell : cells) output_sets.insert(cell.reachable);
  sol.stats.distinct_output_sets = static_cast<long>(output_sets.size());

  bool have_best = false;
  std::vector<int> best_set_orig;
  for (const auto& chosen : output_sets) {  // ascending lexicographic order
    const LinearProgram lp = build_lp_for_outputs(red, chosen);
    sol.stats.lp_vars = lp.num_vars;
    sol.stats.lp_rows = static_cast<int>(lp.rows.size());
    const LpResult res = solve_lp(lp, opts.mode);
    ++sol.stats.lps;
    sol.stats.pivots += res.pivot_count;
    if (res.status != LpStatus::Optimal) {
      throw std::logic_error("restricted output program must be solvable: the zero flow is feasible");
    }

    std::vector<int> chosen_orig;
    chosen_orig.reserve(chosen.size());
    for (int j : chosen) chosen_orig.push_back(pre.kept[static_cast<size_t>(j)]);

    const bool better =
        res.value < sol.value ||
        (res.value == sol.value && have_best &&
         std::lexicographical_compare(chosen_orig.begin(), chosen_orig.end(),
                                      best_set_orig.begin(), best_set_orig.end()));
    if (better) {
      have_best = true;
      best_set_orig = chosen_orig;
      sol.value = res.value;
      const Flow reduced_flow = flow_from_point(res.point, red.m, red.n);
      sol.flow.x = reduced_flow.x;
      sol.flow.y.assign(static_cast<size_t>(inst.n), Rational(0));
      for (int j = 0; j < red.n; ++j) {
        sol.flow.y[static_cast<size_t>(pre.kept[static_cast<size_t>(j)])] = reduced_flow.y[static_cast<size_t>(j)];
      }
      sol.chosen_outputs = chosen_orig;
    }
  }
  return sol;
}

}  // namespace pooling
