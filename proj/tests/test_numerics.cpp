#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "speclab/errors.hpp"
#include "speclab/numerics.hpp"

using speclab::CollisionQuadruple;
using speclab::SymMatrix;

namespace {

SymMatrix random_sym(std::mt19937& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, u(rng));
  return m;
}

}  // namespace

TEST_CASE("packed storage is symmetric and range-checked") {
  SymMatrix m(3);
  m.set(0, 2, 4.5);
  CHECK(m.at(2, 0) == 4.5);
  m.set(2, 0, -1.0);
  CHECK(m.at(0, 2) == -1.0);
  CHECK_THROWS_AS(m.at(3, 0), std::out_of_range);
  CHECK_THROWS_AS(m.set(0, -1, 0.0), std::out_of_range);
}

TEST_CASE("identity diagonalizes to ones") {
  const auto id = SymMatrix::identity(4);
  const auto ep = speclab::sym_eigen_min(id);
  CHECK(ep.value == doctest::Approx(1.0).epsilon(1e-14));
  const auto vals = speclab::sym_eigen_values(id);
  for (double v : vals) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("known 2x2 eigenvalues") {
  // [[2,1],[1,2]] has eigenvalues 1 and 3
  SymMatrix m(2);
  m.set(0, 0, 2.0);
  m.set(1, 1, 2.0);
  m.set(0, 1, 1.0);
  const auto ep = speclab::sym_eigen_min(m);
  CHECK(ep.value == doctest::Approx(1.0).epsilon(1e-13));
  // eigenvector (1,-1)/sqrt(2), first component positive by convention
  CHECK(ep.vector[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ep.vector[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("agrees with characteristic-polynomial bisection on random 8x8") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix m = random_sym(rng, 8, 2.0);
    const double jac = speclab::sym_eigen_min(m).value;
    const double bis = oracle::smallest_eigen_bisect(m, 1e-11);
    CHECK(std::abs(jac - bis) <= 1e-9);
  }
}

TEST_CASE("agrees with shifted power iteration on random matrices") {
  std::mt19937 rng(905);
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix m = random_sym(rng, 6, 1.0);
    const double jac = speclab::sym_eigen_min(m).value;
    const double pow = oracle::smallest_eigen_power(m);
    CHECK(std::abs(jac - pow) <= 1e-9);
  }
}

TEST_CASE("minimum is a lower bound for every Rayleigh quotient") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const SymMatrix m = random_sym(rng, 5);
    const double lo = speclab::sym_eigen_min(m).value;
    for (int k = 0; k < 20; ++k) {
      std::vector<double> x(5);
      double n2 = 0.0;
      for (double& xi : x) {
        xi = u(rng);
        n2 += xi * xi;
      }
      if (n2 == 0.0) continue;
      double q = 0.0;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) q += x[i] * m.at(i, j) * x[j];
      CHECK(q / n2 >= lo - 1e-10);
    }
  }
}

TEST_CASE("eigenvalues of a Gram-like convex combination stay in [0,1]") {
  // A = t I + (1-t) P for a projection-like matrix has spectrum inside [0,1]
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = u(rng);
    SymMatrix m(3);
    for (int i = 0; i < 3; ++i) m.set(i, i, t);
    m.set(0, 0, t + (1 - t));  // projection onto e1
    const auto vals = speclab::sym_eigen_values(m);
    for (double v : vals) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("rational sum arithmetic reduces and detects overflow") {
  const auto half_plus_third = speclab::rational_add(1, 2, 1, 3);
  CHECK(half_plus_third.first == 5);
  CHECK(half_plus_third.second == 6);
  const auto neg = speclab::rational_add(-1, 2, 1, 2);
  CHECK(neg.first == 0);
  CHECK(neg.second == 1);
  const std::int64_t big = 9'000'000'000'000'000'000LL;
  CHECK_THROWS_AS(speclab::rational_add(big, 7, big, 11), speclab::ComputationError);
}

TEST_CASE("rational division") {
  const auto q = speclab::rational_div(3, 4, 9, 2);
  CHECK(q.first == 1);
  CHECK(q.second == 6);
  const auto n = speclab::rational_div(-2, 1, 4, 1);
  CHECK(n.first == -1);
  CHECK(n.second == 2);
  CHECK_THROWS(speclab::rational_div(1, 1, 0, 1));
}

TEST_CASE("square spectra collide exactly at 50") {
  // two sequences j^2, j = 1..7: sums collide first at 1+49 = 25+25 = 50
  std::vector<std::pair<std::int64_t, std::int64_t>> sq;
  for (std::int64_t j = 1; j <= 7; ++j) sq.push_back({j * j, 1});
  const auto cols = speclab::rational_collisions(sq, sq);

  bool fifty = false;
  for (const auto& c : cols) {
    const std::int64_t sum = c.i * c.i + c.j * c.j;
    CHECK(sum == c.i2 * c.i2 + c.j2 * c.j2);
    if (sum == 50) fifty = true;
  }
  CHECK(fifty);
  // symmetric sums like (1,2)+(2,1) collide as well: every quadruple ordered
  for (const auto& c : cols) CHECK(std::pair(c.i, c.j) < std::pair(c.i2, c.j2));
}

TEST_CASE("scaled second factor kills integer collisions") {
  // j^2 vs 2 k^2: j1^2 + 2 k1^2 = j2^2 + 2 k2^2 first at 33 = 1+32 = 25+8
  std::vector<std::pair<std::int64_t, std::int64_t>> sq, dbl;
  for (std::int64_t j = 1; j <= 5; ++j) {
    sq.push_back({j * j, 1});
    dbl.push_back({2 * j * j, 1});
  }
  const auto cols = speclab::rational_collisions(sq, dbl);
  REQUIRE(!cols.empty());
  const auto& c = cols.front();
  CHECK(c.i * c.i + 2 * c.j * c.j == 33);
}

TEST_CASE("brute-force float scan finds the same collision count") {
  // oracle: O(n^2 log) comparison of floating sums with a coarse tolerance,
  // valid here because all sums are integers
  std::vector<std::pair<std::int64_t, std::int64_t>> sq;
  for (std::int64_t j = 1; j <= 20; ++j) sq.push_back({j * j, 1});
  const auto cols = speclab::rational_collisions(sq, sq);

  int brute = 0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j)
      for (int i2 = 1; i2 <= 20; ++i2)
        for (int j2 = 1; j2 <= 20; ++j2) {
          if (std::pair(i, j) >= std::pair(i2, j2)) continue;
          if (i * i + j * j == i2 * i2 + j2 * j2) ++brute;
        }
  CHECK(static_cast<int>(cols.size()) == brute);
}
