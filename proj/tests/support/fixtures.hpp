#pragma once

#include <random>

#include "pooling/instance.hpp"
#include "pooling/lp.hpp"

namespace pooling::testsupport {

// The worked micro-instance used across the suites: two inputs with quality
// values 3 and 1, one output with bound 2, costs (1, 2) in and -5 out, every
// capacity 10. Optimal value -35 at x = (5,5), y = (10).
inline PoolingInstance w1() {
  PoolingInstance inst;
  inst.m = 2;
  inst.n = 1;
  inst.q = 1;
  inst.c_in = {Rational(1), Rational(2)};
  inst.c_out = {Rational(-5)};
  inst.lambda = {{Rational(3)}, {Rational(1)}};
  inst.mu = {{Rational(2)}};
  inst.cap_in = {Rational(10), Rational(10)};
  inst.cap_pool = Rational(10);
  inst.cap_out = {Rational(10)};
  inst.u_in = {Rational(10), Rational(10)};
  inst.u_out = {Rational(10)};
  inst.name = "w1";
  return inst;
}

// Deterministic small-rational draw shared by the randomized tests.
inline Rational draw_rational(std::mt19937_64& eng, long lo, long hi,
                              long max_den = 16) {
  const long den = 1 + static_cast<long>(eng() % static_cast<std::uint64_t>(max_den));
  const long span = (hi - lo) * den;
  const long num = lo * den + static_cast<long>(eng() % static_cast<std::uint64_t>(span + 1));
  return Rational(num, den);
}

// Random LP in the shape the engine advertises: up to 6 variables and 8
// declared rows of any relation, zero lower bounds, optional upper bounds.
inline LinearProgram random_lp(std::mt19937_64& eng, bool bounded_vars) {
  LinearProgram lp;
  lp.num_vars = 1 + static_cast<int>(eng() % 6);
  const int rows = 1 + static_cast<int>(eng() % 8);
  for (int i = 0; i < lp.num_vars; ++i) {
    lp.objective.push_back(draw_rational(eng, -5, 5, 4));
    if (bounded_vars) {
      lp.upper.push_back(draw_rational(eng, 0, 10, 4));
    } else {
      lp.upper.push_back(std::nullopt);
    }
  }
  for (int r = 0; r < rows; ++r) {
    LpRow row;
    for (int i = 0; i < lp.num_vars; ++i) row.coeffs.push_back(draw_rational(eng, -5, 5, 4));
    const auto pick = eng() % 4;
    row.rel = pick == 0   ? Relation::Eq
              : pick == 1 ? Relation::GreaterEq
                          : Relation::LessEq;  // skew toward <=
    row.rhs = draw_rational(eng, -10, 10, 4);
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

}  // namespace pooling::testsupport
