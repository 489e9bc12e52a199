#pragma once

#include "speclab/functionals.hpp"
#include "speclab/model_spectra.hpp"
#include "speclab/set_algebra.hpp"

namespace speclab {

enum class SegmentKind { Horizontal, Vertical, Diagonal };

/// Straight (possibly reflected) geodesic segment of the flat rectangle
/// [0, Lx] x [0, Ly], parameterized by arc length over [0, T].
/// Horizontal runs from (0, level) along +x, vertical from (level, 0)
/// along +y; length 0 means the full span. Diagonal starts at
/// (0, intercept) with the given slope and, when `reflected`, bounces off
/// the walls billiard-style.
struct GeodesicSegment {
  SegmentKind kind = SegmentKind::Horizontal;
  double level = 0.0;
  double slope = 1.0;
  double intercept = 0.0;
  bool reflected = false;
  double length = 0.0;
  double domain_x = 0.0;
  double domain_y = 0.0;
};

/// Tube data around a segment: radius epsilon plus the covering bookkeeping
/// (eta transversality scale, N covering points) used by the limit analysis.
struct TubeSpec {
  GeodesicSegment segment;
  double epsilon = 0.0;
  double eta = 0.0;
  int covering_count = 0;
};

/// Validates and fills defaults: eta = T/8 when not given, N = floor(T/eta)+1.
/// Requires 0 < epsilon < eta.
TubeSpec make_tube(const GeodesicSegment& segment, double epsilon, double eta = 0.0);

/// The open tube of radius epsilon around the segment's image.
struct TubeComplement {
  RectSet outer;  // complement of a circumscribed tube: certified subset
  RectSet inner;  // complement of an inscribed tube: certified superset
  bool exact = false;  // outer == inner (axis-aligned full-span tubes)
};

/// Complement of the tube, bracketed between rectangle unions:
/// outer <= true complement <= inner, slab by slab over x_resolution cells.
/// Throws ComputationError when the tube certainly covers the whole domain.
TubeComplement tube_complement(const TubeSpec& ts, int x_resolution);

enum class ThetaMode { BoundFormula, Direct };

/// The slab profile x1 -> (lower bound on) the second-factor functional of
/// the tube complement's vertical trace. BoundFormula uses the universal
/// sine bound from the trace fraction (Dirichlet second factor only);
/// Direct minimizes over the second factor's eigenspaces up to lambda_max.
/// Computed from the certified outer complement unless use_inner is set.
PiecewiseWeight theta_epsilon(const TubeSpec& ts, const Operator1D& op2, double lambda_max,
                              ThetaMode mode, int x_resolution = 256,
                              bool use_inner = false);

struct TubeBound {
  FunctionalValue value;
  /// Caller-supplied verdict that the product spectrum has minimal
  /// multiplicities up to the cutoff; without it the number is still the
  /// composite value but does not bound the product functional.
  bool mm_verified = false;
};

/// First-factor functional of the slab profile: a certified lower bound for
/// the product functional of the tube complement when mm_verified is true.
TubeBound tube_functional_bound(const TubeSpec& ts, const Operator1D& op1,
                                const Operator1D& op2, double lambda_max, ThetaMode mode,
                                int x_resolution = 256, bool mm_verified = false);

}  // namespace speclab
