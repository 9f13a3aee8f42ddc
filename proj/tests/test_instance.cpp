#include <doctest.h>

#include <random>

#include "pooling/instance.hpp"
#include "support/fixtures.hpp"

using namespace pooling;
using testsupport::w1;

namespace {

Flow make_flow(std::vector<Rational> x, std::vector<Rational> y) {
  return Flow{std::move(x), std::move(y)};
}

}  // namespace

TEST_CASE("validate accepts the worked instance") {
  CHECK(validate(w1()).ok());
}

TEST_CASE("validate flags negative capacities") {
  PoolingInstance inst = w1();
  inst.cap_pool = Rational(-1);
  const auto rep = validate(inst);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].constraint == "capacity-nonnegative");
  CHECK(rep.violations[0].where == "cap_pool");
  CHECK(rep.violations[0].magnitude == Rational(1));
}

TEST_CASE("validate flags shape mismatches") {
  PoolingInstance inst = w1();
  inst.lambda.pop_back();  // wrong row count
  const auto rep = validate(inst);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].constraint == "shape");
  CHECK(rep.violations[0].where == "lambda");
}

TEST_CASE("preprocess keeps reachable outputs") {
  const auto res = preprocess(w1());
  CHECK(res.removed.empty());
  CHECK(res.kept == std::vector<int>{0});
  CHECK(res.instance.n == 1);
}

TEST_CASE("preprocess removes outputs no blend can serve") {
  PoolingInstance inst = w1();
  inst.mu[0][0] = Rational(1, 2);  // below min lambda = 1
  const auto res = preprocess(inst);
  CHECK(res.removed == std::vector<int>{0});
  CHECK(res.instance.n == 0);
}

TEST_CASE("preprocess removes exactly the violating output") {
  PoolingInstance inst = w1();
  inst.n = 2;
  inst.c_out = {Rational(-5), Rational(-4)};
  inst.mu = {{Rational(2)}, {Rational(1, 2)}};
  inst.cap_out = {Rational(10), Rational(10)};
  inst.u_out = {Rational(10), Rational(10)};
  const auto res = preprocess(inst);
  CHECK(res.removed == std::vector<int>{1});
  CHECK(res.kept == std::vector<int>{0});
  CHECK(res.instance.n == 1);
  CHECK(res.instance.c_out == std::vector<Rational>{Rational(-5)});
}

TEST_CASE("preprocess is idempotent") {
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 30; ++trial) {
    PoolingInstance inst = w1();
    inst.n = 3;
    inst.c_out.assign(3, Rational(-1));
    inst.cap_out.assign(3, Rational(5));
    inst.u_out.assign(3, Rational(5));
    inst.mu.clear();
    for (int j = 0; j < 3; ++j) {
      inst.mu.push_back({testsupport::draw_rational(eng, 0, 4)});
    }
    const auto once = preprocess(inst);
    const auto twice = preprocess(once.instance);
    CHECK(twice.removed.empty());
    CHECK(twice.instance.n == once.instance.n);
    CHECK(twice.instance.mu == once.instance.mu);
  }
}

TEST_CASE("objective evaluates the cost sum") {
  const PoolingInstance inst = w1();
  CHECK(objective(inst, make_flow({Rational(5), Rational(5)}, {Rational(10)})) ==
        Rational(-35));
  CHECK(objective(inst, make_flow({Rational(0), Rational(0)}, {Rational(0)})) ==
        Rational(0));
  CHECK(objective(inst, make_flow({Rational(1), Rational(0)}, {Rational(1)})) ==
        Rational(-4));
}

TEST_CASE("flow feasibility checks conservation and capacities") {
  const PoolingInstance inst = w1();
  CHECK(check_flow_feasible(inst, make_flow({Rational(5), Rational(5)}, {Rational(10)}))
            .ok());

  const auto broken =
      check_flow_feasible(inst, make_flow({Rational(5), Rational(5)}, {Rational(9)}));
  REQUIRE_FALSE(broken.ok());
  CHECK(broken.violations[0].constraint == "Eq1");
  CHECK(broken.violations[0].magnitude == Rational(1));

  const auto over =
      check_flow_feasible(inst, make_flow({Rational(11), Rational(0)}, {Rational(11)}));
  REQUIRE_FALSE(over.ok());
  bool saw_input_cap = false;
  for (const auto& v : over.violations) {
    if (v.constraint == "Eq2" && v.index == std::vector<int>{0}) saw_input_cap = true;
  }
  CHECK(saw_input_cap);
}

TEST_CASE("quality feasibility follows the blend") {
  const PoolingInstance inst = w1();
  // p = (3*5 + 1*5)/10 = 2 <= 2
  CHECK(check_quality_feasible(inst, make_flow({Rational(5), Rational(5)}, {Rational(10)}))
            .ok());

  const auto bad =
      check_quality_feasible(inst, make_flow({Rational(10), Rational(0)}, {Rational(10)}));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations[0].constraint == "Eq7");
  CHECK(bad.violations[0].index == std::vector<int>{0, 0});
  CHECK(bad.violations[0].magnitude == Rational(1));  // p = 3 vs mu = 2

  CHECK(check_quality_feasible(inst, make_flow({Rational(0), Rational(0)}, {Rational(0)}))
            .ok());
}

TEST_CASE("float mode tolerates tiny violations") {
  const PoolingInstance inst = w1();
  Flow f = make_flow({Rational(5), Rational(5)},
                     {Rational(10) + Rational(1, 100000000000ll)});  // 1e-11 off
  CHECK_FALSE(check_flow_feasible(inst, f, Mode::Exact).ok());
  CHECK(check_flow_feasible(inst, f, Mode::Float).ok());
}

TEST_CASE("pool quality is a convex combination of input qualities") {
  std::mt19937_64 eng(5);
  const PoolingInstance inst = w1();
  for (int trial = 0; trial < 100; ++trial) {
    Flow f;
    f.x = {testsupport::draw_rational(eng, 0, 10), testsupport::draw_rational(eng, 0, 10)};
    f.y = {f.x[0] + f.x[1]};
    if (f.total_out().is_zero()) continue;
    const auto p = pool_quality(inst, f);
    REQUIRE(p.has_value());
    CHECK((*p)[0] >= Rational(1));  // min lambda
    CHECK((*p)[0] <= Rational(3));  // max lambda
  }
}

TEST_CASE("outputs with zero flow can be dropped without changing anything") {
  PoolingInstance inst = w1();
  inst.n = 2;
  inst.c_out = {Rational(-5), Rational(7)};
  inst.mu = {{Rational(2)}, {Rational(2)}};
  inst.cap_out = {Rational(10), Rational(10)};
  inst.u_out = {Rational(10), Rational(10)};

  const Flow with = make_flow({Rational(5), Rational(5)}, {Rational(10), Rational(0)});
  const PoolingInstance& one = w1();
  const Flow without = make_flow({Rational(5), Rational(5)}, {Rational(10)});

  CHECK(check_flow_feasible(inst, with).ok() == check_flow_feasible(one, without).ok());
  CHECK(check_quality_feasible(inst, with).ok() ==
        check_quality_feasible(one, without).ok());
  CHECK(objective(inst, with) == objective(one, without));
}
