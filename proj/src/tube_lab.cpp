#include "speclab/tube_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "speclab/errors.hpp"

namespace speclab {

namespace {

struct Capsule {
  double ax, ay, bx, by;  // segment endpoints, ax <= bx
};

double seg_length(const GeodesicSegment& g) {
  if (g.length > 0.0) return g.length;
  if (g.kind == SegmentKind::Horizontal) return g.domain_x;
  if (g.kind == SegmentKind::Vertical) return g.domain_y;
  throw std::invalid_argument("diagonal segment needs an explicit length");
}

// Straight pieces of the (possibly reflected) path.
std::vector<Capsule> unfold(const GeodesicSegment& g) {
  const double Lx = g.domain_x, Ly = g.domain_y;
  const double T = seg_length(g);
  std::vector<Capsule> parts;

  auto push = [&](double x0, double y0, double x1, double y1) {
    if (x0 > x1) {
      std::swap(x0, x1);
      std::swap(y0, y1);
    }
    parts.push_back({x0, y0, x1, y1});
  };

  switch (g.kind) {
    case SegmentKind::Horizontal:
      if (g.level < 0.0 || g.level > Ly || T > Lx * (1 + 1e-12))
        throw std::invalid_argument("segment leaves the domain");
      push(0.0, g.level, std::min(T, Lx), g.level);
      return parts;
    case SegmentKind::Vertical:
      if (g.level < 0.0 || g.level > Lx || T > Ly * (1 + 1e-12))
        throw std::invalid_argument("segment leaves the domain");
      push(g.level, 0.0, g.level, std::min(T, Ly));
      return parts;
    case SegmentKind::Diagonal:
      break;
  }

  if (g.intercept < 0.0 || g.intercept > Ly)
    throw std::invalid_argument("segment leaves the domain");
  const double s = std::sqrt(1.0 + g.slope * g.slope);
  double vx = 1.0 / s, vy = g.slope / s;  // unit velocity
  double cx = 0.0, cy = g.intercept;
  double remaining = T;
  while (remaining > 1e-12) {
    // arc length to each wall along the current direction
    double hit = remaining;
    auto wall = [&](double dist_num, double v) {
      if (v > 1e-15) hit = std::min(hit, dist_num / v);
    };
    wall(Lx - cx, vx);
    wall(cx - 0.0, -vx);
    wall(Ly - cy, vy);
    wall(cy - 0.0, -vy);
    if (hit <= 1e-12) throw ComputationError("degenerate reflection step");
    const double nx = cx + hit * vx, ny = cy + hit * vy;
    push(cx, cy, nx, ny);
    remaining -= hit;
    if (remaining <= 1e-12) break;
    if (!g.reflected) throw std::invalid_argument("segment leaves the domain");
    // reflect off whichever wall was reached (both at a corner)
    if (nx >= Lx - 1e-12 || nx <= 1e-12) vx = -vx;
    if (ny >= Ly - 1e-12 || ny <= 1e-12) vy = -vy;
    cx = nx;
    cy = ny;
    if (parts.size() > 10'000) throw ComputationError("reflection count exceeded sanity bound");
  }
  return parts;
}

double safe_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

// Upper and lower boundary of the eps-capsule at abscissa x. The capsule is
// convex, so the upper boundary is concave in x and the lower one convex.
std::optional<std::pair<double, double>> capsule_slice(const Capsule& c, double eps, double x) {
  if (x < c.ax - eps || x > c.bx + eps) return std::nullopt;
  double hi = -1e300, lo = 1e300;
  if (std::abs(x - c.ax) <= eps) {
    const double h = safe_sqrt(eps * eps - (x - c.ax) * (x - c.ax));
    hi = std::max(hi, c.ay + h);
    lo = std::min(lo, c.ay - h);
  }
  if (std::abs(x - c.bx) <= eps) {
    const double h = safe_sqrt(eps * eps - (x - c.bx) * (x - c.bx));
    hi = std::max(hi, c.by + h);
    lo = std::min(lo, c.by - h);
  }
  if (c.bx > c.ax) {
    const double m = (c.by - c.ay) / (c.bx - c.ax);
    const double s = std::sqrt(1.0 + m * m);
    const double shift = eps * m / s;  // x-shift of the offset segments
    if (x >= c.ax - shift && x <= c.bx - shift)
      hi = std::max(hi, c.ay + m * (x - c.ax) + eps * s);
    if (x >= c.ax + shift && x <= c.bx + shift)
      lo = std::min(lo, c.ay + m * (x - c.ax) - eps * s);
  }
  if (hi < lo) return std::nullopt;  // only possible through rounding at the tips
  return std::make_pair(lo, hi);
}

struct CellTrace {
  std::vector<std::pair<double, double>> outer;  // covers the tube on the cell
  std::vector<std::pair<double, double>> inner;  // covered by the tube on the cell
};

CellTrace cell_trace(const std::vector<Capsule>& parts, double eps, double a, double b) {
  CellTrace t;
  for (const auto& c : parts) {
    const double u = std::max(a, c.ax - eps);
    const double v = std::min(b, c.bx + eps);
    if (u > v) continue;
    // concave upper boundary peaks over the higher endpoint, convex lower
    // boundary dips under the lower one; clamping the peak into [u, v]
    // realizes the extremum over the cell
    const double peak_hi = (c.ay >= c.by) ? c.ax : c.bx;
    const double peak_lo = (c.ay <= c.by) ? c.ax : c.bx;
    const auto top = capsule_slice(c, eps, std::clamp(peak_hi, u, v));
    const auto bot = capsule_slice(c, eps, std::clamp(peak_lo, u, v));
    if (top && bot && bot->first < top->second) t.outer.emplace_back(bot->first, top->second);

    // inner: endpoint slices certify containment at every interior x
    if (c.ax - eps <= a && b <= c.bx + eps) {
      const auto sa = capsule_slice(c, eps, a);
      const auto sb = capsule_slice(c, eps, b);
      if (sa && sb) {
        const double lo = std::max(sa->first, sb->first);
        const double hi = std::min(sa->second, sb->second);
        if (lo < hi) t.inner.emplace_back(lo, hi);
      }
    }
  }
  return t;
}

}  // namespace

TubeSpec make_tube(const GeodesicSegment& segment, double epsilon, double eta) {
  if (!(segment.domain_x > 0.0) || !(segment.domain_y > 0.0))
    throw std::invalid_argument("segment needs a positive domain");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double T = seg_length(segment);
  TubeSpec ts;
  ts.segment = segment;
  ts.epsilon = epsilon;
  ts.eta = (eta > 0.0) ? eta : T / 8.0;
  if (!(epsilon < ts.eta))
    throw std::invalid_argument("epsilon must stay below the transversality scale eta");
  ts.covering_count = static_cast<int>(std::floor(T / ts.eta)) + 1;
  return ts;
}

TubeComplement tube_complement(const TubeSpec& ts, int x_resolution) {
  if (x_resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  const double Lx = ts.segment.domain_x, Ly = ts.segment.domain_y;
  const double eps = ts.epsilon;
  const GeodesicSegment& g = ts.segment;

  TubeComplement out;

  // Full-span axis-aligned tubes are exact rectangles.
  const double T = seg_length(g);
  if (g.kind == SegmentKind::Horizontal && T >= Lx * (1 - 1e-12)) {
    const IntervalSet kept =
        IntervalSet::from_union({{g.level - eps, g.level + eps}}, Ly).complement();
    std::vector<std::array<double, 4>> rects;
    for (const auto& [y0, y1] : kept.components()) rects.push_back({0.0, Lx, y0, y1});
    if (rects.empty()) throw ComputationError("tube covers the whole domain");
    out.outer = RectSet::from_union(rects, Lx, Ly);
    out.inner = out.outer;
    out.exact = true;
    return out;
  }
  if (g.kind == SegmentKind::Vertical && T >= Ly * (1 - 1e-12)) {
    const IntervalSet kept =
        IntervalSet::from_union({{g.level - eps, g.level + eps}}, Lx).complement();
    std::vector<std::array<double, 4>> rects;
    for (const auto& [x0, x1] : kept.components()) rects.push_back({x0, x1, 0.0, Ly});
    if (rects.empty()) throw ComputationError("tube covers the whole domain");
    out.outer = RectSet::from_union(rects, Lx, Ly);
    out.inner = out.outer;
    out.exact = true;
    return out;
  }

  const std::vector<Capsule> parts = unfold(g);
  std::vector<std::array<double, 4>> outer_rects, inner_rects;
  for (int c = 0; c < x_resolution; ++c) {
    const double a = Lx * c / x_resolution;
    const double b = Lx * (c + 1) / x_resolution;
    const CellTrace t = cell_trace(parts, eps, a, b);
    const IntervalSet keep_outer = IntervalSet::from_union(t.outer, Ly).complement();
    const IntervalSet keep_inner = IntervalSet::from_union(t.inner, Ly).complement();
    for (const auto& [y0, y1] : keep_outer.components()) outer_rects.push_back({a, b, y0, y1});
    for (const auto& [y0, y1] : keep_inner.components()) inner_rects.push_back({a, b, y0, y1});
  }
  if (inner_rects.empty()) throw ComputationError("tube covers the whole domain");
  out.outer = RectSet::from_union(std::move(outer_rects), Lx, Ly);
  out.inner = RectSet::from_union(std::move(inner_rects), Lx, Ly);
  return out;
}

PiecewiseWeight theta_epsilon(const TubeSpec& ts, const Operator1D& op2, double lambda_max,
                              ThetaMode mode, int x_resolution, bool use_inner) {
  if (std::abs(op2.length() - ts.segment.domain_y) > 1e-9 * ts.segment.domain_y)
    throw std::invalid_argument("second factor does not match the domain height");
  if (mode == ThetaMode::BoundFormula && op2.kind() != OperatorKind::DirichletInterval)
    throw std::invalid_argument("the sine bound applies to the Dirichlet factor only");
  const TubeComplement tc = tube_complement(ts, x_resolution);
  const RectSet& f = use_inner ? tc.inner : tc.outer;
  const double Ly = ts.segment.domain_y;

  PiecewiseWeight w;
  w.breakpoints = f.x_breakpoints();
  for (std::size_t c = 0; c + 1 < w.breakpoints.size(); ++c) {
    const double mid = 0.5 * (w.breakpoints[c] + w.breakpoints[c + 1]);
    const IntervalSet trace = f.vertical_trace(mid);
    double val = 0.0;
    if (!trace.components().empty()) {
      if (mode == ThetaMode::BoundFormula)
        val = sine_mass_bound(trace.measure() / Ly);
      else
        val = g_1d(op2, trace, lambda_max).value;
    }
    w.values.push_back(std::clamp(val, 0.0, 1.0));
  }
  return w;
}

TubeBound tube_functional_bound(const TubeSpec& ts, const Operator1D& op1,
                                const Operator1D& op2, double lambda_max, ThetaMode mode,
                                int x_resolution, bool mm_verified) {
  if (std::abs(op1.length() - ts.segment.domain_x) > 1e-9 * ts.segment.domain_x)
    throw std::invalid_argument("first factor does not match the domain width");
  const PiecewiseWeight w = theta_epsilon(ts, op2, lambda_max, mode, x_resolution);
  TubeBound out;
  out.value = g_1d(op1, w, lambda_max);
  out.value.kind = FunctionalKind::GCompositeBound;
  out.mm_verified = mm_verified;
  return out;
}

}  // namespace speclab
