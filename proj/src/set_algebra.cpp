#include "speclab/set_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace speclab {

namespace {

void check_ambient(double L) {
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("ambient length must be positive and finite");
}

}  // namespace

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals, double ambient_length)
    : intervals_(std::move(intervals)), ambient_(ambient_length) {
  check_ambient(ambient_);
  double prev = 0.0;
  for (const auto& [a, b] : intervals_) {
    if (!(a < b)) throw std::invalid_argument("interval endpoints must satisfy a < b");
    if (a < prev - 1e-15 * ambient_)
      throw std::invalid_argument("intervals must be sorted and disjoint");
    if (b > ambient_ + 1e-12 * ambient_)
      throw std::invalid_argument("interval leaves the ambient domain");
    prev = b;
  }
  for (auto& [a, b] : intervals_) {
    a = std::max(a, 0.0);
    b = std::min(b, ambient_);
  }
}

IntervalSet IntervalSet::from_union(std::vector<std::pair<double, double>> intervals,
                                    double ambient_length) {
  check_ambient(ambient_length);
  std::vector<std::pair<double, double>> kept;
  for (auto [a, b] : intervals) {
    a = std::max(a, 0.0);
    b = std::min(b, ambient_length);
    if (a < b) kept.emplace_back(a, b);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : kept) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return IntervalSet(std::move(merged), ambient_length);
}

double IntervalSet::measure() const {
  double s = 0.0;
  for (const auto& [a, b] : intervals_) s += b - a;
  return s;
}

bool IntervalSet::contains(double x) const {
  for (const auto& [a, b] : intervals_)
    if (a < x && x < b) return true;
  return false;
}

IntervalSet IntervalSet::complement() const {
  std::vector<std::pair<double, double>> out;
  double cur = 0.0;
  for (const auto& [a, b] : intervals_) {
    if (a > cur) out.emplace_back(cur, a);
    cur = b;
  }
  if (cur < ambient_) out.emplace_back(cur, ambient_);
  return IntervalSet(std::move(out), ambient_);
}

std::string IntervalSet::to_json() const {
  nlohmann::json j;
  j["intervals"] = nlohmann::json::array();
  for (const auto& [a, b] : intervals_) j["intervals"].push_back({a, b});
  return j.dump();
}

IntervalSet IntervalSet::from_json(const std::string& text, double ambient_length) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.is_array()) j = nlohmann::json{{"intervals", j}};  // accept the bare list form
  if (!j.contains("intervals") || !j["intervals"].is_array())
    throw std::invalid_argument("interval set json needs an \"intervals\" array");
  std::vector<std::pair<double, double>> ivs;
  for (const auto& e : j["intervals"]) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("each interval must be a [a, b] pair");
    ivs.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return IntervalSet::from_union(std::move(ivs), ambient_length);
}

RectSet::RectSet(std::vector<std::array<double, 4>> rects, double ambient_x, double ambient_y)
    : rects_(std::move(rects)), ax_(ambient_x), ay_(ambient_y) {
  check_ambient(ax_);
  check_ambient(ay_);
  for (auto& r : rects_) {
    if (!(r[0] < r[1]) || !(r[2] < r[3]))
      throw std::invalid_argument("rectangle sides must have positive length");
    if (r[0] < -1e-12 * ax_ || r[1] > ax_ * (1 + 1e-12) ||
        r[2] < -1e-12 * ay_ || r[3] > ay_ * (1 + 1e-12))
      throw std::invalid_argument("rectangle leaves the ambient domain");
    r[0] = std::max(r[0], 0.0);
    r[1] = std::min(r[1], ax_);
    r[2] = std::max(r[2], 0.0);
    r[3] = std::min(r[3], ay_);
  }
  for (std::size_t i = 0; i < rects_.size(); ++i)
    for (std::size_t j = i + 1; j < rects_.size(); ++j) {
      const auto& a = rects_[i];
      const auto& b = rects_[j];
      const bool overlap =
          a[0] < b[1] && b[0] < a[1] && a[2] < b[3] && b[2] < a[3];
      if (overlap) throw std::invalid_argument("rectangles overlap with positive area");
    }
}

RectSet RectSet::from_union(std::vector<std::array<double, 4>> rects,
                            double ambient_x, double ambient_y) {
  check_ambient(ambient_x);
  check_ambient(ambient_y);
  // Decompose into vertical slabs between consecutive x-coordinates; inside a
  // slab the union is a plain 1D union of y-ranges.
  std::vector<double> xs = {0.0, ambient_x};
  for (auto& r : rects) {
    r[0] = std::clamp(r[0], 0.0, ambient_x);
    r[1] = std::clamp(r[1], 0.0, ambient_x);
    r[2] = std::clamp(r[2], 0.0, ambient_y);
    r[3] = std::clamp(r[3], 0.0, ambient_y);
    xs.push_back(r[0]);
    xs.push_back(r[1]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
           xs.end());

  std::vector<std::array<double, 4>> out;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double x0 = xs[s], x1 = xs[s + 1];
    if (!(x0 < x1)) continue;
    const double mid = 0.5 * (x0 + x1);
    std::vector<std::pair<double, double>> ys;
    for (const auto& r : rects)
      if (r[0] <= mid && mid <= r[1] && r[2] < r[3]) ys.emplace_back(r[2], r[3]);
    if (ys.empty()) continue;
    IntervalSet strip = IntervalSet::from_union(std::move(ys), ambient_y);
    for (const auto& [y0, y1] : strip.components()) out.push_back({x0, x1, y0, y1});
  }
  // Stitch slabs that share identical y-ranges across a common edge, so a
  // plain rectangle comes back as itself.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a[2], a[3], a[0]) < std::tie(b[2], b[3], b[0]);
  });
  std::vector<std::array<double, 4>> stitched;
  for (const auto& r : out) {
    auto* last = stitched.empty() ? nullptr : &stitched.back();
    if (last && (*last)[2] == r[2] && (*last)[3] == r[3] && (*last)[1] == r[0])
      (*last)[1] = r[1];
    else
      stitched.push_back(r);
  }
  std::sort(stitched.begin(), stitched.end());
  return RectSet(std::move(stitched), ambient_x, ambient_y);
}

double RectSet::area() const {
  double s = 0.0;
  for (const auto& r : rects_) s += (r[1] - r[0]) * (r[3] - r[2]);
  return s;
}

bool RectSet::contains(double x, double y) const {
  for (const auto& r : rects_)
    if (r[0] < x && x < r[1] && r[2] < y && y < r[3]) return true;
  return false;
}

RectSet RectSet::complement() const {
  // Complement slab by slab: within a vertical slab the complement of the
  // traced y-union is a 1D complement.
  std::vector<double> xs = x_breakpoints();
  std::vector<std::array<double, 4>> out;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double x0 = xs[s], x1 = xs[s + 1];
    if (!(x0 < x1)) continue;
    IntervalSet gap = vertical_trace(0.5 * (x0 + x1)).complement();
    for (const auto& [y0, y1] : gap.components()) out.push_back({x0, x1, y0, y1});
  }
  return RectSet::from_union(std::move(out), ax_, ay_);
}

IntervalSet RectSet::vertical_trace(double x) const {
  std::vector<std::pair<double, double>> ys;
  for (const auto& r : rects_)
    if (r[0] < x && x < r[1]) ys.emplace_back(r[2], r[3]);
  return IntervalSet::from_union(std::move(ys), ay_);
}

std::vector<double> RectSet::x_breakpoints() const {
  std::vector<double> xs = {0.0, ax_};
  for (const auto& r : rects_) {
    xs.push_back(r[0]);
    xs.push_back(r[1]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
           xs.end());
  return xs;
}

std::string RectSet::to_json() const {
  nlohmann::json j;
  j["rects"] = nlohmann::json::array();
  for (const auto& r : rects_) j["rects"].push_back({r[0], r[1], r[2], r[3]});
  return j.dump();
}

RectSet RectSet::from_json(const std::string& text, double ambient_x, double ambient_y) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.is_array()) j = nlohmann::json{{"rects", j}};
  if (!j.contains("rects") || !j["rects"].is_array())
    throw std::invalid_argument("rect set json needs a \"rects\" array");
  std::vector<std::array<double, 4>> rs;
  for (const auto& e : j["rects"]) {
    if (!e.is_array() || e.size() != 4)
      throw std::invalid_argument("each rectangle must be [x0, x1, y0, y1]");
    rs.push_back({e[0].get<double>(), e[1].get<double>(),
                  e[2].get<double>(), e[3].get<double>()});
  }
  return RectSet::from_union(std::move(rs), ambient_x, ambient_y);
}

}  // namespace speclab
