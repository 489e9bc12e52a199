#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "speclab/errors.hpp"
#include "speclab/model_spectra.hpp"
#include "speclab/set_algebra.hpp"

using speclab::IntervalSet;
using speclab::Operator1D;
using speclab::OperatorKind;

namespace {

constexpr double kPi = std::numbers::pi;

// direct sample of the m-th basis function, used only by quadrature oracles
double basis_eval(const Operator1D& op, int m, double x) {
  const double L = op.length();
  const double r2 = std::numbers::sqrt2;
  switch (op.kind()) {
    case OperatorKind::DirichletInterval:
      return r2 * std::sin(m * kPi * x / L);
    case OperatorKind::NeumannInterval:
      return m == 1 ? 1.0 : r2 * std::cos((m - 1) * kPi * x / L);
    case OperatorKind::Circle: {
      if (m == 1) return 1.0;
      const double w = (m / 2) * 2.0 * kPi / L;
      return m % 2 == 0 ? r2 * std::cos(w * x) : r2 * std::sin(w * x);
    }
  }
  return 0.0;
}

}  // namespace

TEST_CASE("closed-form spectra") {
  const auto dir = Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1);
  for (int j = 1; j <= 12; ++j) {
    CHECK(dir.eigenvalue(j) == doctest::Approx(j * j).epsilon(1e-15));
    CHECK(dir.multiplicity(j) == 1);
  }
  const auto neu = Operator1D::with_pi_length(OperatorKind::NeumannInterval, 1, 1);
  CHECK(neu.eigenvalue(1) == 0.0);
  CHECK(neu.eigenvalue(2) == doctest::Approx(1.0));
  CHECK(neu.eigenvalue(5) == doctest::Approx(16.0));

  const auto cir = Operator1D::with_pi_length(OperatorKind::Circle, 2, 1);  // circumference 2 pi
  CHECK(cir.eigenvalue(1) == 0.0);
  CHECK(cir.multiplicity(1) == 1);
  CHECK(cir.eigenvalue(2) == doctest::Approx(1.0));
  CHECK(cir.multiplicity(2) == 2);
  CHECK(cir.eigenvalue(4) == doctest::Approx(9.0));
}

TEST_CASE("exact rational eigenvalues track the pi-fraction length") {
  const auto half = Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 2);
  const auto sp = speclab::spectrum(half, 4);
  // L = pi/2 gives lambda_j = 4 j^2
  REQUIRE(sp[2].exact.has_value());
  CHECK(sp[2].exact->first == 36);
  CHECK(sp[2].exact->second == 1);
  CHECK(sp[2].eigenvalue == doctest::Approx(36.0));

  const auto third = Operator1D::with_pi_length(OperatorKind::NeumannInterval, 3, 1);
  const auto sp3 = speclab::spectrum(third, 3);
  // L = 3 pi gives lambda_j = (j-1)^2 / 9
  CHECK(sp3[2].exact->first == 4);
  CHECK(sp3[2].exact->second == 9);
}

TEST_CASE("spectrum_up_to certifies coverage with one entry past the cutoff") {
  const auto dir = Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1);
  const auto sp = speclab::spectrum_up_to(dir, 100.0);
  REQUIRE(sp.size() >= 2);
  CHECK(sp.back().eigenvalue > 100.0);
  CHECK(sp[sp.size() - 2].eigenvalue <= 100.0);
}

TEST_CASE("basis is orthonormal under the probability measure") {
  for (const auto kind :
       {OperatorKind::DirichletInterval, OperatorKind::NeumannInterval, OperatorKind::Circle}) {
    const double L = (kind == OperatorKind::Circle) ? 2.0 * kPi : kPi;
    const Operator1D op(kind, L);
    for (int m = 1; m <= 7; ++m)
      for (int n = m; n <= 7; ++n) {
        const double v = speclab::pair_integral(m, n, 0.0, L, op);
        CHECK(std::abs(v - (m == n ? 1.0 : 0.0)) <= 1e-12);
      }
  }
}

TEST_CASE("quarter-interval ground-state mass has the closed form") {
  const auto dir = Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1);
  const double v = speclab::pair_integral(1, 1, 0.0, kPi / 4.0, dir);
  CHECK(v == doctest::Approx(0.25 - 1.0 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(v == doctest::Approx(0.09084505690810465).epsilon(1e-14));
}

TEST_CASE("pair integrals match adaptive quadrature") {
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> mode(1, 14);
  const Operator1D ops[] = {
      Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1),
      Operator1D::with_pi_length(OperatorKind::NeumannInterval, 4, 5),
      Operator1D::with_pi_length(OperatorKind::Circle, 2, 1),
  };
  for (int trial = 0; trial < 120; ++trial) {
    const Operator1D& op = ops[trial % 3];
    const int m = mode(rng), n = mode(rng);
    double a = u(rng) * op.length(), b = u(rng) * op.length();
    if (a > b) std::swap(a, b);
    const double lib = speclab::pair_integral(m, n, a, b, op);
    const double ref = oracle::integrate(
        [&](double x) { return basis_eval(op, m, x) * basis_eval(op, n, x) / op.length(); },
        a, b, 1e-13, 64);
    CHECK(std::abs(lib - ref) <= 1e-10);
  }
}

TEST_CASE("nearly touching endpoints stay accurate") {
  // high-frequency pair over a tiny interval: the product-form primitives
  // avoid the cancellation a naive antiderivative difference would hit
  const auto dir = Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1);
  const double a = 1.234567890123456;
  const double w = 1e-9;
  const double lib = speclab::pair_integral(400, 400, a, a + w, dir);
  const double ref = oracle::integrate(
      [&](double x) { return basis_eval(dir, 400, x) * basis_eval(dir, 400, x) / kPi; }, a,
      a + w, 1e-18, 8);
  CHECK(lib == doctest::Approx(ref).epsilon(1e-9));
  CHECK(lib >= 0.0);
}

TEST_CASE("eigenspace bases and masses") {
  const auto cir = Operator1D::with_pi_length(OperatorKind::Circle, 2, 1);
  CHECK(speclab::eigenspace_basis(cir, 1) == std::vector<int>{1});
  CHECK(speclab::eigenspace_basis(cir, 3) == std::vector<int>{4, 5});

  const IntervalSet full({{0.0, 2.0 * kPi}}, 2.0 * kPi);
  // any unit combination on the full circle has full mass
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> c = {u(rng), u(rng)};
    if (c[0] == 0.0 && c[1] == 0.0) c[0] = 1.0;
    const double mass = speclab::eigenfunction_mass(cir, 2, c, full);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }

  // half circle: rotation shifts mass between the cos/sin pair but the
  // average over the pair is 1/2
  const IntervalSet half({{0.0, kPi}}, 2.0 * kPi);
  const double mc = speclab::eigenfunction_mass(cir, 2, {1.0, 0.0}, half);
  const double ms = speclab::eigenfunction_mass(cir, 2, {0.0, 1.0}, half);
  CHECK(mc + ms == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid arguments are rejected") {
  const auto dir = Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1);
  CHECK_THROWS_AS(dir.eigenvalue(0), std::invalid_argument);
  CHECK_THROWS_AS(Operator1D(OperatorKind::Circle, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(speclab::pair_integral(1, 1, -0.5, 1.0, dir), std::invalid_argument);
  CHECK_THROWS_AS(speclab::eigenfunction_mass(dir, 1, {0.0}, IntervalSet({{0.0, 1.0}}, kPi)),
                  std::invalid_argument);
  CHECK_THROWS_AS(speclab::eigenfunction_mass(dir, 1, {1.0, 1.0}, IntervalSet({{0.0, 1.0}}, kPi)),
                  std::invalid_argument);
}
