#include <doctest.h>

#include <random>
#include <set>

#include "pooling/arrangement.hpp"
#include "pooling/io.hpp"
#include "support/fixtures.hpp"

using namespace pooling;
using testsupport::w1;

namespace {

std::set<SignVector> eps_set(const std::vector<Cell>& cells) {
  std::set<SignVector> out;
  for (const auto& c : cells) out.insert(c.eps);
  return out;
}

// Uniform-ish rational point of the simplex with bounded denominator.
std::vector<Rational> random_simplex_point(std::mt19937_64& eng, int dim) {
  const long den = 1 + static_cast<long>(eng() % 64);
  std::vector<long> cuts;
  long left = den;
  std::vector<Rational> z;
  for (int i = 0; i < dim; ++i) {
    const long t = static_cast<long>(eng() % static_cast<std::uint64_t>(left + 1));
    z.push_back(Rational(t, den));
    left -= t;
  }
  return z;
}

}  // namespace

TEST_CASE("hyperplanes of the worked instance") {
  const auto hps = build_hyperplanes(w1());
  REQUIRE(hps.size() == 1);
  CHECK(hps[0].a == std::vector<Rational>{Rational(2)});  // 3 - 1
  CHECK(hps[0].b == Rational(1));                         // 2 - 1
  CHECK(hps[0].output == 0);
  CHECK(hps[0].quality == 0);
}

TEST_CASE("single-input instances live in a zero-dimensional ratio space") {
  PoolingInstance inst = w1();
  inst.m = 1;
  inst.c_in = {Rational(1)};
  inst.lambda = {{Rational(1)}};
  inst.cap_in = {Rational(10)};
  inst.u_in = {Rational(10)};
  const auto hps = build_hyperplanes(inst);
  REQUIRE(hps.size() == 1);
  CHECK(hps[0].a.empty());
  CHECK(hps[0].b == Rational(1));  // mu - lambda = 2 - 1

  const auto cells = enumerate_cells(hps, 1, 1, 1);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].eps.at(0, 0) == 0);
  CHECK(cells[0].reachable == std::vector<int>{0});
  CHECK(cells[0].witness.empty());
}

TEST_CASE("one input, many outputs: a single all-zero cell") {
  GenParams params;
  params.m = 1;
  params.n = 3;
  params.q = 2;
  params.seed = 66;
  const PoolingInstance inst = generate_instance(params);  // mu >= lambda by construction
  const auto cells = enumerate_cells(build_hyperplanes(inst), 1, 3, 2);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].eps == SignVector(3, 2));  // all zeros
  CHECK(cells[0].reachable == std::vector<int>{0, 1, 2});
  CHECK(cell_bound(1, 3, 2) == 1);
}

TEST_CASE("identical quality rows give identical hyperplanes in one class") {
  PoolingInstance inst = w1();
  inst.n = 2;
  inst.c_out = {Rational(-5), Rational(-5)};
  inst.mu = {{Rational(2)}, {Rational(2)}};
  inst.cap_out = {Rational(10), Rational(10)};
  inst.u_out = {Rational(10), Rational(10)};
  const auto hps = build_hyperplanes(inst);
  REQUIRE(hps.size() == 2);
  CHECK(hps[0].a == hps[1].a);
  CHECK(hps[0].b == hps[1].b);

  // Collapsed geometry: the duplicate entries stay tied, so only two cells.
  const auto cells = enumerate_cells(hps, 2, 2, 1);
  REQUIRE(cells.size() == 2);
  for (const auto& c : cells) CHECK(c.eps.at(0, 0) == c.eps.at(1, 0));
}

TEST_CASE("classification is exact and boundary points take the closed side") {
  const auto hps = build_hyperplanes(w1());
  const std::vector<Rational> zero{Rational(0)}, half{Rational(1, 2)}, one{Rational(1)};
  CHECK(classify_point(zero, hps, 1, 1).at(0, 0) == 0);
  CHECK(classify_point(one, hps, 1, 1).at(0, 0) == 1);   // 2 > 1
  CHECK(classify_point(half, hps, 1, 1).at(0, 0) == 0);  // 2*(1/2) = 1 <= 1
}

TEST_CASE("cell enumeration on the worked instance") {
  const auto cells = enumerate_cells(build_hyperplanes(w1()), 2, 1, 1);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].eps.at(0, 0) == 0);
  CHECK(cells[0].reachable == std::vector<int>{0});
  CHECK(cells[1].eps.at(0, 0) == 1);
  CHECK(cells[1].reachable.empty());
  // Witnesses sit on their own side.
  CHECK(Rational(2) * cells[0].witness[0] <= Rational(1));
  CHECK(Rational(2) * cells[1].witness[0] > Rational(1));
}

TEST_CASE("hyperplanes missing the simplex leave a single full cell") {
  PoolingInstance inst = w1();
  inst.mu = {{Rational(100)}};  // 2z <= 99 everywhere on [0,1]
  const auto cells = enumerate_cells(build_hyperplanes(inst), 2, 1, 1);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].eps.at(0, 0) == 0);
  CHECK(cells[0].reachable == std::vector<int>{0});
}

TEST_CASE("cell-count bounds") {
  CHECK(cell_bound(2, 1, 1) == 2);
  CHECK(cell_bound(3, 2, 2) == 9);  // 1 + 2*2 + 1*4
  CHECK(cell_bound(1, 17, 5) == 1);
  CHECK(buck_bound(2, 1, 1) == 2);
  CHECK(buck_bound(3, 2, 2) == 11);  // 1 + 4 + 6
  CHECK(buck_bound(1, 8, 3) == 1);

  // The parallel-class bound is never weaker than the generic one.
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 6; ++n) {
      for (int q = 1; q <= 4; ++q) {
        CHECK(cell_bound(m, n, q) <= buck_bound(m, n, q));
      }
    }
  }
}

TEST_CASE("general position holds for the worked instance") {
  CHECK(is_general_position(build_hyperplanes(w1()), 2));
}

TEST_CASE("duplicate offsets break general position") {
  PoolingInstance inst = w1();
  inst.n = 2;
  inst.c_out = {Rational(-5), Rational(-5)};
  inst.mu = {{Rational(2)}, {Rational(2)}};  // coincident points in R^1
  inst.cap_out = {Rational(10), Rational(10)};
  inst.u_out = {Rational(10), Rational(10)};
  CHECK_FALSE(is_general_position(build_hyperplanes(inst), 2));
}

TEST_CASE("generated general-position systems verify by exact rank") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    GenParams params;
    params.m = 3;
    params.n = 2;
    params.q = 2;
    params.seed = seed;
    params.general_position = true;
    const PoolingInstance inst = generate_instance(params);
    CHECK(is_general_position(build_hyperplanes(inst), inst.m));
  }
}

TEST_CASE("general-position systems attain the cell bound in free space") {
  for (std::uint64_t seed : {21u, 22u}) {
    GenParams params;
    params.m = 3;
    params.n = 2;
    params.q = 2;
    params.seed = seed;
    params.general_position = true;
    const PoolingInstance inst = generate_instance(params);
    const auto cells = enumerate_cells(build_hyperplanes(inst), inst.m, inst.n,
                                       inst.q, {.restrict_to_simplex = false});
    CHECK(mpz_class(cells.size()) == cell_bound(inst.m, inst.n, inst.q));
  }
}

TEST_CASE("cells partition the simplex") {
  GenParams params;
  params.m = 3;
  params.n = 3;
  params.q = 2;
  params.seed = 77;
  const PoolingInstance inst = generate_instance(params);
  const auto hps = build_hyperplanes(inst);
  const auto cells = enumerate_cells(hps, inst.m, inst.n, inst.q);
  const auto known = eps_set(cells);
  REQUIRE(known.size() == cells.size());  // no duplicate sign vectors

  std::mt19937_64 eng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto z = random_simplex_point(eng, inst.m - 1);
    const SignVector eps = classify_point(z, hps, inst.n, inst.q);
    CHECK(known.count(eps) == 1);
  }
}

TEST_CASE("witnesses classify back to their own cell") {
  for (std::uint64_t seed : {8u, 9u, 10u}) {
    GenParams params;
    params.m = 4;
    params.n = 3;
    params.q = 2;
    params.seed = seed;
    const PoolingInstance inst = generate_instance(params);
    const auto hps = build_hyperplanes(inst);
    for (bool restricted : {true, false}) {
      const auto cells =
          enumerate_cells(hps, inst.m, inst.n, inst.q, {.restrict_to_simplex = restricted});
      CHECK(mpz_class(cells.size()) <= cell_bound(inst.m, inst.n, inst.q));
      for (const auto& cell : cells) {
        CHECK(classify_point(cell.witness, hps, inst.n, inst.q) == cell.eps);
        if (restricted) {
          Rational sum;
          for (const auto& zi : cell.witness) {
            CHECK(zi >= Rational(0));
            sum += zi;
          }
          CHECK(sum <= Rational(1));
        }
      }
    }
  }
}

TEST_CASE("grid-sampled sign vectors are a subset of the enumerated cells") {
  GenParams params;
  params.m = 3;
  params.n = 4;
  params.q = 1;
  params.seed = 55;
  const PoolingInstance inst = generate_instance(params);
  const auto hps = build_hyperplanes(inst);
  const auto known = eps_set(enumerate_cells(hps, inst.m, inst.n, inst.q));

  for (int t0 = 0; t0 <= 12; ++t0) {
    for (int t1 = 0; t0 + t1 <= 12; ++t1) {
      const std::vector<Rational> z{Rational(t0, 12), Rational(t1, 12)};
      CHECK(known.count(classify_point(z, hps, inst.n, inst.q)) == 1);
    }
  }
}
