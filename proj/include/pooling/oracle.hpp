#pragma once

#include <set>
#include <vector>

#include "pooling/arrangement.hpp"
#include "pooling/instance.hpp"
#include "pooling/solver.hpp"

namespace pooling {

struct OracleOptions {
  Mode mode = Mode::Exact;
  int max_outputs = 20;  // 2^n restricted programs; hard guard
};

/// Brute-force global optimum: solves one restricted program per output
/// subset (all 2^n of them) and keeps the best, ties broken by the
/// lexicographically smallest subset. Deliberately built without any of the
/// arrangement machinery - it shares only the LP engine and the instance
/// model - so it can certify the cell-enumeration solver. Throws GuardError
/// when n exceeds the guard.
Solution solve_by_subset_enumeration(const PoolingInstance& inst,
                                     const OracleOptions& opts = {});

struct GridScanResult {
  Rational best_value;                   // min fixed-ratio value over the grid
  std::vector<Rational> best_z;          // first grid point attaining it
  std::set<SignVector> sign_vectors_seen;
  long points = 0;
};

/// Sweeps the lattice { z : z_i = t_i / r, sum t_i <= r } of the ratio
/// simplex, solving the fixed-ratio program at every point. The best value
/// is an upper bound on the true optimum; the sign vectors collected are a
/// sampled subset of the true cell set.
GridScanResult grid_scan(const PoolingInstance& inst, int resolution,
                         Mode mode = Mode::Exact);

/// 16 for up to three inputs, 8 beyond: the lattice has C(r+m-1, m-1) points.
int default_grid_resolution(int m);

/// Re-derives everything a solution claims: flow feasibility, quality
/// feasibility, and the objective value, all exactly.
ValidationReport verify_solution(const PoolingInstance& inst, const Solution& sol);

}  // namespace pooling
