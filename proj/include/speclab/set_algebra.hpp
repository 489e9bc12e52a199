#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace speclab {

/// Finite union of disjoint open intervals inside an ambient interval [0, L].
/// Canonical form: sorted, pairwise disjoint, nonempty components.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Components must already be sorted, disjoint and inside [0, length].
  IntervalSet(std::vector<std::pair<double, double>> intervals, double ambient_length);

  /// Arbitrary intervals: sorts, drops empties, merges overlaps.
  static IntervalSet from_union(std::vector<std::pair<double, double>> intervals,
                                double ambient_length);

  const std::vector<std::pair<double, double>>& components() const { return intervals_; }
  double ambient_length() const { return ambient_; }

  double measure() const;
  bool contains(double x) const;
  IntervalSet complement() const;

  std::string to_json() const;
  static IntervalSet from_json(const std::string& text, double ambient_length);

 private:
  std::vector<std::pair<double, double>> intervals_;
  double ambient_ = 0.0;
};

/// Finite union of axis-aligned open rectangles in [0, Lx] x [0, Ly].
/// Canonical form: pairwise disjoint rectangles (touching edges allowed),
/// each nonempty.
class RectSet {
 public:
  RectSet() = default;

  /// Rectangles must be pairwise disjoint up to boundary.
  RectSet(std::vector<std::array<double, 4>> rects, double ambient_x, double ambient_y);

  /// Arbitrary rectangles: decomposed into disjoint vertical slabs.
  static RectSet from_union(std::vector<std::array<double, 4>> rects,
                            double ambient_x, double ambient_y);

  const std::vector<std::array<double, 4>>& rects() const { return rects_; }
  double ambient_x() const { return ax_; }
  double ambient_y() const { return ay_; }

  double area() const;
  bool contains(double x, double y) const;
  RectSet complement() const;

  /// Slice {y : (x, y) in set} as an IntervalSet over [0, Ly].
  IntervalSet vertical_trace(double x) const;

  /// Sorted x-coordinates where the vertical trace can change, deduplicated
  /// at absolute tolerance 1e-14. Always includes 0 and Lx.
  std::vector<double> x_breakpoints() const;

  std::string to_json() const;
  static RectSet from_json(const std::string& text, double ambient_x, double ambient_y);

 private:
  std::vector<std::array<double, 4>> rects_;
  double ax_ = 0.0;
  double ay_ = 0.0;
};

}  // namespace speclab
