#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pooling/rational.hpp"

namespace pooling {

/// One-pool blending network: m inputs feed a single pool that serves n
/// outputs, with q quality attributes tracked through the blend. Costs and
/// quality data may be negative; capacities must be nonnegative.
///
/// Instances are immutable after construction; all checks below are pure.
struct PoolingInstance {
  int m = 0;  // inputs
  int n = 0;  // outputs
  int q = 0;  // qualities

  std::vector<Rational> c_in;   // cost per unit flow on each input arc
  std::vector<Rational> c_out;  // cost per unit flow on each output arc

  std::vector<std::vector<Rational>> lambda;  // m x q input quality values
  std::vector<std::vector<Rational>> mu;      // n x q output quality upper bounds

  std::vector<Rational> cap_in;   // input vertex capacities
  Rational cap_pool;              // pool vertex capacity
  std::vector<Rational> cap_out;  // output vertex capacities
  std::vector<Rational> u_in;     // input arc capacities
  std::vector<Rational> u_out;    // output arc capacities

  std::string name;
  std::optional<std::uint64_t> seed;
};

/// Arc flows. x and y are the input- and output-arc flows; the pool quality
/// vector is derived (see pool_quality) and defined only while the total
/// outflow is positive.
struct Flow {
  std::vector<Rational> x;
  std::vector<Rational> y;

  Rational total_in() const;
  Rational total_out() const;
};

struct Violation {
  std::string constraint;  // "shape", "capacity-nonnegative", "Eq1", ...
  std::string where;       // offending field or quantity, e.g. "lambda", "x"
  std::vector<int> index;  // 0-based entity indices, empty when n/a
  Rational magnitude;      // amount by which the constraint is violated
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string first_message() const;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(ValidationReport r)
      : std::runtime_error("invalid instance: " + r.first_message()),
        report(std::move(r)) {}
  ValidationReport report;
};

/// Guard errors: a size limit was breached (input ceiling, oracle guard).
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structural validation: array shapes against m/n/q and nonnegative
/// capacities. Quality reachability (see preprocess) is deliberately not
/// checked here; instances failing it are still valid inputs.
ValidationReport validate(const PoolingInstance& inst);

struct PreprocessResult {
  PoolingInstance instance;  // outputs no input blend can serve are dropped
  std::vector<int> kept;     // kept[j'] = original index of reduced output j'
  std::vector<int> removed;  // original indices of dropped outputs
};

/// Drops every output j for which some quality k has
/// min_i lambda[i][k] > mu[j][k]; such an output can never receive flow.
/// Idempotent. The reduced instance may have n = 0, in which case the only
/// feasible flow is zero.
PreprocessResult preprocess(const PoolingInstance& inst);

/// Total flow cost: sum of c_in . x and c_out . y.
Rational objective(const PoolingInstance& inst, const Flow& f);

/// Pool quality vector derived from the blend; empty when total outflow is 0.
std::optional<std::vector<Rational>> pool_quality(const PoolingInstance& inst,
                                                  const Flow& f);

/// Checks conservation at the pool, vertex capacities, arc capacities and
/// nonnegativity. Exact in Exact mode; within kFloatTol in Float mode.
ValidationReport check_flow_feasible(const PoolingInstance& inst, const Flow& f,
                                     Mode mode = Mode::Exact);

/// Checks the blended pool quality against every output that receives flow.
/// Zero total outflow is vacuously feasible.
ValidationReport check_quality_feasible(const PoolingInstance& inst,
                                        const Flow& f, Mode mode = Mode::Exact);

}  // namespace pooling
