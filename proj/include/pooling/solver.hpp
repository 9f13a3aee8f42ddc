#pragma once

#include <span>
#include <vector>

#include "pooling/arrangement.hpp"
#include "pooling/instance.hpp"
#include "pooling/lp.hpp"

namespace pooling {

struct SolverStats {
  long cells = 0;                 // cells enumerated in the ratio simplex
  long lps = 0;                   // linear programs actually solved
  long distinct_output_sets = 0;  // distinct reachable sets across cells
  long pivots = 0;                // simplex pivots, all solves combined
  int lp_vars = 0;                // variables per constructed program
  int lp_rows = 0;                // declared rows per constructed program
};

struct Solution {
  Rational value;
  Flow flow;                        // indexed by the original instance
  std::vector<int> chosen_outputs;  // original 0-based indices, ascending
  std::vector<int> removed_outputs; // outputs dropped by preprocessing
  SolverStats stats;
  Mode mode = Mode::Exact;
};

struct SolveOptions {
  Mode mode = Mode::Exact;
  /// Cell counts grow as n^(m-1); instances beyond this input count are
  /// rejected with a GuardError rather than run open-endedly.
  int max_inputs = 6;
};

/// The restricted program LP(J'): flow may leave only through the outputs in
/// `chosen`, whose quality rows are enforced. Always m+n variables (the
/// excluded outputs get upper bound 0) and m + n(q+1) + 2 rows (quality rows
/// for excluded outputs are padded trivially true); arc capacities enter as
/// variable bounds. Expects a preprocessed instance.
LinearProgram build_lp_for_outputs(const PoolingInstance& inst,
                                   const std::vector<int>& chosen);

/// Optimal value of LP(J'). Always feasible: the zero flow satisfies every
/// row, so the value is at most 0.
LpResult val(const PoolingInstance& inst, const std::vector<int>& chosen,
             Mode mode = Mode::Exact);

struct FixedRatioResult {
  Rational value;
  Flow flow;
  std::vector<int> reachable;  // outputs admissible at this ratio
};

/// Best flow whose input proportions equal z (a point of the ratio simplex):
/// LP(J(z)) with the m proportion rows appended. Expects a preprocessed
/// instance.
FixedRatioResult solve_fixed_ratio(const PoolingInstance& inst,
                                   std::span<const Rational> z,
                                   Mode mode = Mode::Exact);

/// Exact global optimum of the one-pool instance: enumerates the cells of
/// the quality arrangement in the input-ratio simplex, solves one LP per
/// distinct reachable output set, and returns the best solution (ties on
/// value broken by the lexicographically smallest output set). Throws
/// ValidationError on malformed instances and GuardError past max_inputs.
Solution solve_pooling(const PoolingInstance& inst, const SolveOptions& opts = {});

}  // namespace pooling
