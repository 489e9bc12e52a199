#pragma once

#include <vector>

#include "speclab/model_spectra.hpp"
#include "speclab/product_spectrum.hpp"
#include "speclab/set_algebra.hpp"

namespace speclab {

enum class FunctionalKind { GDirect, GCompositeBound, GPrimeLiminf, Theta };

/// Result of minimizing the mass quadratic form phi -> integral of a |phi|^2
/// over normalized eigenfunctions up to a spectral cutoff.
struct FunctionalValue {
  double value = 0.0;
  int witness_index = 0;               // 1-based distinct-eigenvalue (or level) index
  std::vector<double> witness_coeffs;  // unit vector over the witness eigenspace basis
  double cutoff = 0.0;
  FunctionalKind kind = FunctionalKind::GDirect;
};

/// Step function on [0, L]: values[c] on (breakpoints[c], breakpoints[c+1]).
struct PiecewiseWeight {
  std::vector<double> breakpoints;  // strictly increasing, spanning [0, L]
  std::vector<double> values;       // one per cell, in [0, 1]
};

/// Smallest mass on omega over normalized eigenfunctions with eigenvalue
/// <= lambda_max; per eigenspace this is the least eigenvalue of the Gram
/// quadratic form, so circle eigenspaces are minimized jointly.
FunctionalValue g_1d(const Operator1D& op, const IntervalSet& omega, double lambda_max);

/// Same minimization for a piecewise-constant weight in place of an
/// indicator; the weighted Gram is assembled cell by cell.
FunctionalValue g_1d(const Operator1D& op, const PiecewiseWeight& weight, double lambda_max);

/// Universal lower bound (1/2)(pi f - sin(pi f)) on the integral of sin^2(jx)
/// over any measurable subset of [0, pi] occupying the fraction f of it,
/// uniform in j.
double sine_lower_bound(double fraction);

/// The same bound normalized by the full mass pi/2: a lower bound on the
/// probability mass, f - sin(pi f) / pi. Exact at f = 1.
double sine_mass_bound(double fraction);

/// Fubini composite bound for a product domain: evaluates
/// h(x1) = g(op2, omega_x1) on each vertical slab of omega (the trace is
/// constant per slab) and returns g(op1, h). Under minimal product
/// multiplicity this bounds the product functional from below.
FunctionalValue g_composite_bound(const Operator1D& op1, const Operator1D& op2,
                                  const RectSet& omega, double lambda_max);

/// Direct product functional: for each distinct product eigenvalue <= cutoff,
/// minimizes over the full eigenspace (all tensor basis functions of the
/// collision class jointly). `levels` must come from build_product with a
/// cutoff at least lambda_max.
FunctionalValue g_product_direct(const std::vector<ProductLevel>& levels,
                                 const Operator1D& op1, const Operator1D& op2,
                                 const RectSet& omega, double lambda_max);

/// Windowed stand-in for the high-frequency liminf: the minimum of
/// eigenspace-minimal masses over eigenvalues in
/// [window_fraction * lambda_max, lambda_max].
FunctionalValue ql_liminf(const Operator1D& op, const IntervalSet& omega, double lambda_max,
                          double window_fraction = 0.5);

FunctionalValue ql_liminf(const std::vector<ProductLevel>& levels, const Operator1D& op1,
                          const Operator1D& op2, const RectSet& omega, double lambda_max,
                          double window_fraction = 0.5);

}  // namespace speclab
