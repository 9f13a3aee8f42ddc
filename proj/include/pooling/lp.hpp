#pragma once

#include <optional>
#include <vector>

#include "pooling/rational.hpp"

namespace pooling {

enum class Relation { LessEq, Eq, GreaterEq };

struct LpRow {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

/// Linear program in the form
///   minimize c . x  subject to the rows and 0 <= x_i (<= upper_i),
/// where every variable has lower bound 0 and an optional finite upper
/// bound. Upper bounds are materialized as extra rows inside the solver;
/// `rows` is the declared constraint system only.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
  std::vector<std::optional<Rational>> upper;  // size num_vars (or empty)
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;                // meaningful when Optimal
  std::vector<Rational> point;   // basic feasible solution when Optimal
  long pivot_count = 0;
};

/// Two-phase simplex with Bland's anti-cycling rule. Exact mode pivots in
/// rational arithmetic and certifies optimality by the absence of improving
/// columns; Float mode runs the same tableau in binary64 with tolerance
/// kFloatTol.
LpResult solve_lp(const LinearProgram& lp, Mode mode = Mode::Exact);

/// One weak (a . z <= b) or strict (a . z > b) half-space over R^dim.
struct SlackRow {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;
};

/// Domain over which a strict/weak system is decided: the standard simplex
/// (z >= 0, sum z <= 1) or all of R^dim.
enum class SlackDomain { Simplex, Free };

struct SlackResult {
  bool weak_feasible = false;     // closure of the system has a point
  Rational t_star;                // best min-slack over strict rows, capped at 1
  std::vector<Rational> witness;  // point attaining t_star (when weak_feasible)

  /// True iff the strict/weak system itself has a solution.
  bool nonempty() const { return weak_feasible && t_star.sign() > 0; }
};

/// Decides a system of weak and strict half-spaces by maximizing the least
/// slack t over the strict rows (each scaled to unit max-norm), capped at 1,
/// subject to the weak rows and the domain. The system has a solution iff
/// the auxiliary program is feasible with t > 0; the witness then satisfies
/// every strict row with slack >= t. Always exact: cell-emptiness is a sign
/// decision that tolerances cannot certify.
SlackResult solve_max_min_slack(int dim, const std::vector<SlackRow>& rows,
                                SlackDomain domain = SlackDomain::Simplex);

}  // namespace pooling
