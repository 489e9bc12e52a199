#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "speclab/errors.hpp"
#include "speclab/model_spectra.hpp"
#include "speclab/product_spectrum.hpp"
#include "speclab/square_lab.hpp"

using speclab::c_omega;
using speclab::RectSet;
using speclab::sum_two_squares;
using speclab::SymMatrix;

namespace {

constexpr double kPi = std::numbers::pi;

RectSet full_square() { return RectSet::from_union({{0.0, kPi, 0.0, kPi}}, kPi, kPi); }

}  // namespace

TEST_CASE("two-square representations are enumerated exactly") {
  const auto e50 = sum_two_squares(50);
  REQUIRE(e50.pairs.size() == 3);
  CHECK(e50.pairs[0] == std::pair(1, 7));
  CHECK(e50.pairs[1] == std::pair(5, 5));
  CHECK(e50.pairs[2] == std::pair(7, 1));

  CHECK(sum_two_squares(3).pairs.empty());
  CHECK(sum_two_squares(1).pairs.empty());

  const auto e65 = sum_two_squares(65);
  REQUIRE(e65.pairs.size() == 4);
  CHECK(e65.pairs[0] == std::pair(1, 8));
  CHECK(e65.pairs[1] == std::pair(4, 7));
  CHECK(e65.pairs[2] == std::pair(7, 4));
  CHECK(e65.pairs[3] == std::pair(8, 1));

  // every enumerated pair satisfies the equation, for a spread of lambdas
  for (std::int64_t lam : {2, 25, 50, 325, 1105, 9999}) {
    for (const auto& [j, k] : sum_two_squares(lam).pairs)
      CHECK(static_cast<std::int64_t>(j) * j + static_cast<std::int64_t>(k) * k == lam);
  }
}

TEST_CASE("smallest eigenvalues with many representations") {
  CHECK(speclab::min_lambda_with_representations(1, 100) == 2);
  CHECK(speclab::min_lambda_with_representations(2, 100) == 50);
  CHECK(speclab::min_lambda_with_representations(3, 1000) == 325);
  CHECK_THROWS_AS(speclab::min_lambda_with_representations(9, 400), speclab::NotFoundError);
}

TEST_CASE("eigenspace dimension matches the product-spectrum multiplicity") {
  const auto op = speclab::Operator1D::with_pi_length(speclab::OperatorKind::DirichletInterval, 1, 1);
  const auto levels = speclab::build_product(op, op, 10'000.0);
  for (const auto& lvl : levels) {
    REQUIRE(lvl.exact);
    REQUIRE(lvl.exact->second == 1);
    const auto es = sum_two_squares(lvl.exact->first);
    CHECK(static_cast<int>(es.pairs.size()) == lvl.multiplicity);
  }
  // and every representable lambda appears as a level
  int represented = 0;
  for (std::int64_t lam = 2; lam <= 10'000; ++lam)
    if (!sum_two_squares(lam).pairs.empty()) ++represented;
  CHECK(static_cast<int>(levels.size()) == represented);
}

TEST_CASE("gram of the full square is the identity") {
  const auto g = speclab::gram_matrix(sum_two_squares(50), full_square());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(g.at(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("half-square gram at 50 is scalar one half") {
  const auto omega = RectSet::from_union({{0.0, kPi / 2.0, 0.0, kPi}}, kPi, kPi);
  const auto g = speclab::gram_matrix(sum_two_squares(50), omega);
  // distinct y-frequencies 7, 5, 1 are orthogonal over the full y-range,
  // so only the diagonal survives, each entry the 1D half-interval mass
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(g.at(i, j) - (i == j ? 0.5 : 0.0)) <= 1e-12);
  const auto rec = c_omega(50, omega);
  CHECK(rec.c_value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("gram entries agree with 2d quadrature") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, kPi);
  std::uniform_int_distribution<std::int64_t> lam_pick(2, 500);
  int done = 0;
  while (done < 8) {
    const std::int64_t lam = lam_pick(rng);
    const auto es = sum_two_squares(lam);
    if (es.pairs.empty()) continue;
    double x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    if (x1 - x0 < 0.3 || y1 - y0 < 0.3) continue;
    const auto omega = RectSet::from_union({{x0, x1, y0, y1}}, kPi, kPi);
    const auto g = speclab::gram_matrix(es, omega);
    const int d = static_cast<int>(es.pairs.size());
    const int a = 0, b = d - 1;
    const auto [ja, ka] = es.pairs[a];
    const auto [jb, kb] = es.pairs[b];
    const double ref = oracle::integrate2d(
        [&](double x, double y) {
          return (2.0 / kPi) * (2.0 / kPi) * std::sin(ja * x) * std::sin(jb * x) *
                 std::sin(ka * y) * std::sin(kb * y);
        },
        x0, x1, y0, y1, 1e-12, 24);
    CHECK(std::abs(g.at(a, b) - ref) <= 1e-9);
    ++done;
  }
}

TEST_CASE("gram of a set and its complement sum to the identity") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    double x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    if (x1 - x0 < 1e-3 || y1 - y0 < 1e-3) continue;
    const auto omega = RectSet::from_union({{x0, x1, y0, y1}}, kPi, kPi);
    const auto es = sum_two_squares(trial % 2 == 0 ? 50 : 25);
    const auto g = speclab::gram_matrix(es, omega);
    const auto gc = speclab::gram_matrix(es, omega.complement());
    const int d = static_cast<int>(es.pairs.size());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(std::abs(g.at(i, j) + gc.at(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("single-pair eigenvalues reduce to a plain mass") {
  const auto omega = RectSet::from_union({{0.4, 1.3, 0.2, 2.2}}, kPi, kPi);
  const auto rec = c_omega(2, omega);
  const auto op = speclab::Operator1D::with_pi_length(speclab::OperatorKind::DirichletInterval, 1, 1);
  const double mass = speclab::pair_integral(1, 1, 0.4, 1.3, op) *
                      speclab::pair_integral(1, 1, 0.2, 2.2, op);
  CHECK(rec.c_value == doctest::Approx(mass).epsilon(1e-12));
  CHECK(rec.witness_coeffs.size() == 1);
}

TEST_CASE("nested sets give monotone concentration constants") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    double x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    if (x1 - x0 < 0.2 || y1 - y0 < 0.2) continue;
    const auto small = RectSet::from_union({{x0, x1, y0, y1}}, kPi, kPi);
    const double grow = 0.5 * std::min(x0, kPi - x1);
    const auto big =
        RectSet::from_union({{x0 - grow, x1 + grow, y0, y1}}, kPi, kPi);
    for (std::int64_t lam : {2, 25, 50}) {
      CHECK(c_omega(lam, small).c_value <= c_omega(lam, big).c_value + 1e-12);
    }
  }
}

TEST_CASE("product sets respect the tensor lower bound") {
  // for omega = B1 x B2 the Gram is a principal submatrix of a Kronecker
  // product, so its least eigenvalue dominates the product of the 1D ones
  const auto op = speclab::Operator1D::with_pi_length(speclab::OperatorKind::DirichletInterval, 1, 1);
  const auto es = sum_two_squares(50);
  const double ax0 = 0.3, ax1 = 1.9, ay0 = 0.5, ay1 = 2.7;
  const auto omega = RectSet::from_union({{ax0, ax1, ay0, ay1}}, kPi, kPi);

  std::vector<int> freqs = {1, 5, 7};
  SymMatrix x(3), y(3);
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      x.set(a, b, speclab::pair_integral(freqs[a], freqs[b], ax0, ax1, op));
      y.set(a, b, speclab::pair_integral(freqs[a], freqs[b], ay0, ay1, op));
    }
  const double bound =
      speclab::sym_eigen_min(x).value * speclab::sym_eigen_min(y).value;
  CHECK(c_omega(50, omega).c_value >= bound - 1e-12);
}

TEST_CASE("scan reports the running minimum deterministically") {
  const auto omega = RectSet::from_union({{0.3, 0.8, 1.1, 2.0}}, kPi, kPi);
  const auto seq = speclab::c_omega_scan(omega, 300, 1);
  const auto par = speclab::c_omega_scan(omega, 300, 4);
  REQUIRE(seq.table.size() == par.table.size());
  for (std::size_t i = 0; i < seq.table.size(); ++i) {
    CHECK(seq.table[i].lambda == par.table[i].lambda);
    CHECK(seq.table[i].c_value == par.table[i].c_value);  // bitwise equal
  }
  CHECK(seq.min_c == par.min_c);
  CHECK(seq.argmin_lambda == par.argmin_lambda);
  CHECK(seq.min_c > 0.0);
  for (const auto& rec : seq.table) CHECK(rec.c_value > 0.0);
}

TEST_CASE("full-square scan is identically one") {
  const auto scan = speclab::c_omega_scan(full_square(), 100, 2);
  CHECK(scan.min_c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("asking for a non-eigenvalue fails cleanly") {
  const auto omega = full_square();
  CHECK_THROWS_AS(c_omega(3, omega), speclab::NotFoundError);
  CHECK_THROWS_AS(c_omega(7, omega), speclab::NotFoundError);
  CHECK_THROWS_AS(speclab::gram_matrix(sum_two_squares(3), omega), std::invalid_argument);
}
