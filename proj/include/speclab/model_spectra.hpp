#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace speclab {

class IntervalSet;

enum class OperatorKind { DirichletInterval, NeumannInterval, Circle };

/// One of the three 1D model operators with closed-form spectrum:
/// the Dirichlet or Neumann Laplacian on [0, L], or the Laplacian on a
/// circle of circumference L. Eigenfunctions are normalized against the
/// uniform probability measure dx / L.
class Operator1D {
 public:
  Operator1D(OperatorKind kind, double length);

  OperatorKind kind() const { return kind_; }
  double length() const { return length_; }

  /// Exact value of the squared frequency unit ((pi/L)^2 for intervals,
  /// (2 pi / L)^2 for the circle) as a reduced rational, when L was given
  /// as an integer multiple/fraction of pi. Enables exact spectra.
  std::optional<std::pair<std::int64_t, std::int64_t>> exact_scale() const {
    return exact_scale_;
  }

  /// L = pi * num / den with exact rational bookkeeping.
  static Operator1D with_pi_length(OperatorKind kind, std::int64_t num, std::int64_t den);

  int multiplicity(int index) const;  // distinct-eigenvalue index, 1-based
  double eigenvalue(int index) const;

 private:
  OperatorKind kind_;
  double length_;
  std::optional<std::pair<std::int64_t, std::int64_t>> exact_scale_;
};

struct SpectrumEntry {
  int index = 0;           // 1-based, distinct eigenvalues
  double eigenvalue = 0.0;
  int multiplicity = 1;
  std::optional<std::pair<std::int64_t, std::int64_t>> exact;  // num/den when rational
};

/// First `count` distinct eigenvalues with multiplicities.
std::vector<SpectrumEntry> spectrum(const Operator1D& op, int count);

/// All distinct eigenvalues up to (and one beyond) `lambda_max`, so that the
/// list certifiably covers the cutoff.
std::vector<SpectrumEntry> spectrum_up_to(const Operator1D& op, double lambda_max);

/// Integral over (a, b) of the product of the m-th and n-th real orthonormal
/// basis functions, against the probability measure dx / L. Basis order:
/// sines for Dirichlet; the constant then cosines for Neumann; the constant
/// then (cos, sin) pairs of increasing frequency for the circle. Closed-form
/// antiderivatives only.
double pair_integral(int m, int n, double a, double b, const Operator1D& op);

/// Basis indices spanning the eigenspace of the `index`-th distinct
/// eigenvalue (one index for intervals, a cos/sin pair for the circle).
std::vector<int> eigenspace_basis(const Operator1D& op, int index);

/// Mass on omega of the unit-norm eigenfunction with the given coefficients
/// over the eigenspace basis: integral of |phi|^2 d(rho) over omega.
double eigenfunction_mass(const Operator1D& op, int index,
                          const std::vector<double>& coeffs, const IntervalSet& omega);

}  // namespace speclab
