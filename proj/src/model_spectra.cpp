#include "speclab/model_spectra.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/set_algebra.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;

// 2 cos(g (a+b)/2) sin(g (b-a)/2) == sin(g b) - sin(g a), but stays accurate
// when the two sines nearly cancel.
double sin_diff(double g, double a, double b) {
  return 2.0 * std::cos(0.5 * g * (a + b)) * std::sin(0.5 * g * (b - a));
}

// cos(g b) - cos(g a) in product form.
double cos_diff(double g, double a, double b) {
  return -2.0 * std::sin(0.5 * g * (a + b)) * std::sin(0.5 * g * (b - a));
}

// Frequency (in multiples of the base angular unit) of basis index m,
// together with whether it is a cosine. Circle basis: 1, cos, sin, cos, sin...
struct BasisWave {
  int freq;       // 0 for the constant
  bool cosine;    // meaningful when freq > 0
  double amp;     // L2(rho) normalization factor
};

BasisWave basis_wave(const Operator1D& op, int m) {
  if (m < 1) throw std::invalid_argument("basis index must be >= 1");
  const double r2 = std::numbers::sqrt2;
  switch (op.kind()) {
    case OperatorKind::DirichletInterval:
      return {m, false, r2};
    case OperatorKind::NeumannInterval:
      if (m == 1) return {0, true, 1.0};
      return {m - 1, true, r2};
    case OperatorKind::Circle:
      if (m == 1) return {0, true, 1.0};
      return {(m / 2), m % 2 == 0, r2};
  }
  throw std::logic_error("unreachable");
}

double angular_unit(const Operator1D& op) {
  const double base = kPi / op.length();
  return op.kind() == OperatorKind::Circle ? 2.0 * base : base;
}

}  // namespace

Operator1D::Operator1D(OperatorKind kind, double length) : kind_(kind), length_(length) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("operator length must be positive and finite");
}

Operator1D Operator1D::with_pi_length(OperatorKind kind, std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("length fraction must be positive");
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  Operator1D op(kind, kPi * static_cast<double>(num) / static_cast<double>(den));
  // (c pi / L)^2 with L = pi num/den gives (c den / num)^2, c = 1 or 2.
  const std::int64_t c = (kind == OperatorKind::Circle) ? 2 : 1;
  std::int64_t sn = c * den, sd = num;
  const std::int64_t g2 = std::gcd(sn, sd);
  op.exact_scale_ = {{(sn / g2) * (sn / g2), (sd / g2) * (sd / g2)}};
  return op;
}

int Operator1D::multiplicity(int index) const {
  if (index < 1) throw std::invalid_argument("spectrum index must be >= 1");
  if (kind_ == OperatorKind::Circle) return index == 1 ? 1 : 2;
  return 1;
}

double Operator1D::eigenvalue(int index) const {
  if (index < 1) throw std::invalid_argument("spectrum index must be >= 1");
  const double u = angular_unit(*this);
  switch (kind_) {
    case OperatorKind::DirichletInterval:
      return (u * index) * (u * index);
    case OperatorKind::NeumannInterval:
    case OperatorKind::Circle: {
      const double f = u * (index - 1);
      return f * f;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

SpectrumEntry make_entry(const Operator1D& op, int i) {
  SpectrumEntry e;
  e.index = i;
  e.eigenvalue = op.eigenvalue(i);
  e.multiplicity = op.multiplicity(i);
  if (op.exact_scale()) {
    const auto [sn, sd] = *op.exact_scale();
    const std::int64_t k = (op.kind() == OperatorKind::DirichletInterval) ? i : i - 1;
    if (k > 3037000499LL) throw ComputationError("exact eigenvalue overflows 64-bit rational");
    std::int64_t num;
    if (__builtin_mul_overflow(sn, k * k, &num))
      throw ComputationError("exact eigenvalue overflows 64-bit rational");
    const std::int64_t g = std::gcd(num, sd);
    e.exact = {{num / g, sd / g}};
  }
  return e;
}

}  // namespace

std::vector<SpectrumEntry> spectrum(const Operator1D& op, int count) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  std::vector<SpectrumEntry> out;
  out.reserve(count);
  for (int i = 1; i <= count; ++i) out.push_back(make_entry(op, i));
  return out;
}

std::vector<SpectrumEntry> spectrum_up_to(const Operator1D& op, double lambda_max) {
  if (!(lambda_max >= 0.0)) throw std::invalid_argument("lambda_max must be >= 0");
  std::vector<SpectrumEntry> out;
  for (int i = 1;; ++i) {
    out.push_back(make_entry(op, i));
    if (out.back().eigenvalue > lambda_max) break;  // one past the cutoff certifies coverage
    if (i > 10'000'000) throw NotFoundError("spectrum enumeration exceeded sanity bound");
  }
  return out;
}

double pair_integral(int m, int n, double a, double b, const Operator1D& op) {
  if (a > b) std::swap(a, b);
  const double L = op.length();
  if (a < 0.0 || b > L + 1e-12 * L)
    throw std::invalid_argument("integration range leaves the domain");
  b = std::min(b, L);
  const BasisWave u = basis_wave(op, m);
  const BasisWave v = basis_wave(op, n);
  const double g = angular_unit(op);
  const double wu = g * u.freq, wv = g * v.freq;
  const double norm = u.amp * v.amp / L;

  // Product-to-sum: each primitive is a linear term plus stable sin/cos
  // differences, so nearby endpoints do not cancel catastrophically.
  auto int_cos = [&](double w) {  // integral of cos(w x)
    if (w == 0.0) return b - a;
    return sin_diff(w, a, b) / w;
  };
  auto int_sin = [&](double w) {  // integral of sin(w x)
    if (w == 0.0) return 0.0;
    return -cos_diff(w, a, b) / w;
  };

  double val;
  if (!u.cosine && !v.cosine) {
    // sin sin = (cos(w-) - cos(w+)) / 2
    val = 0.5 * (int_cos(wu - wv) - int_cos(wu + wv));
  } else if (u.cosine && v.cosine) {
    // cos cos = (cos(w-) + cos(w+)) / 2
    val = 0.5 * (int_cos(wu - wv) + int_cos(wu + wv));
  } else {
    // sin cos = (sin(w+) + sin(w-)) / 2 with the sine's frequency first
    const double ws = u.cosine ? wv : wu;
    const double wc = u.cosine ? wu : wv;
    val = 0.5 * (int_sin(ws + wc) + int_sin(ws - wc));
  }
  return norm * val;
}

std::vector<int> eigenspace_basis(const Operator1D& op, int index) {
  if (index < 1) throw std::invalid_argument("spectrum index must be >= 1");
  switch (op.kind()) {
    case OperatorKind::DirichletInterval:
    case OperatorKind::NeumannInterval:
      return {index};
    case OperatorKind::Circle:
      if (index == 1) return {1};
      return {2 * (index - 1), 2 * (index - 1) + 1};
  }
  throw std::logic_error("unreachable");
}

double eigenfunction_mass(const Operator1D& op, int index,
                          const std::vector<double>& coeffs, const IntervalSet& omega) {
  const std::vector<int> basis = eigenspace_basis(op, index);
  if (coeffs.size() != basis.size())
    throw std::invalid_argument("coefficient count does not match eigenspace dimension");
  double n2 = 0.0;
  for (double c : coeffs) n2 += c * c;
  if (!(n2 > 0.0)) throw std::invalid_argument("coefficients must not all vanish");

  double mass = 0.0;
  for (const auto& [a, b] : omega.components()) {
    for (std::size_t p = 0; p < basis.size(); ++p)
      for (std::size_t q = 0; q < basis.size(); ++q)
        mass += coeffs[p] * coeffs[q] * pair_integral(basis[p], basis[q], a, b, op);
  }
  return mass / n2;
}

}  // namespace speclab
