#include "speclab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/numerics.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;

struct LevelRange {
  int first_index;  // 1-based distinct index of the first admitted eigenvalue
  int last_index;   // inclusive
};

// Distinct indices with eigenvalue in [lo, hi]; hi must admit at least one.
LevelRange indices_in(const Operator1D& op, double lo, double hi) {
  LevelRange r{0, 0};
  for (int i = 1;; ++i) {
    const double ev = op.eigenvalue(i);
    if (ev > hi) break;
    if (ev >= lo && r.first_index == 0) r.first_index = i;
    if (ev >= lo) r.last_index = i;
    if (i > 10'000'000) throw NotFoundError("eigenvalue enumeration exceeded sanity bound");
  }
  if (r.first_index == 0) throw NotFoundError("no eigenvalue inside the requested range");
  return r;
}

// Gram of the eigenspace of the index-th distinct eigenvalue against either
// an indicator (IntervalSet) or a step weight.
SymMatrix eigenspace_gram(const Operator1D& op, int index, const IntervalSet& omega) {
  const auto basis = eigenspace_basis(op, index);
  const int d = static_cast<int>(basis.size());
  SymMatrix g(d);
  for (int p = 0; p < d; ++p)
    for (int q = p; q < d; ++q) {
      double s = 0.0;
      for (const auto& [a, b] : omega.components())
        s += pair_integral(basis[p], basis[q], a, b, op);
      g.set(p, q, s);
    }
  return g;
}

SymMatrix eigenspace_gram(const Operator1D& op, int index, const PiecewiseWeight& w) {
  const auto basis = eigenspace_basis(op, index);
  const int d = static_cast<int>(basis.size());
  SymMatrix g(d);
  for (int p = 0; p < d; ++p)
    for (int q = p; q < d; ++q) {
      double s = 0.0;
      for (std::size_t c = 0; c + 1 < w.breakpoints.size(); ++c)
        if (w.values[c] != 0.0)
          s += w.values[c] *
               pair_integral(basis[p], basis[q], w.breakpoints[c], w.breakpoints[c + 1], op);
      g.set(p, q, s);
    }
  return g;
}

template <typename Weight>
FunctionalValue g_1d_impl(const Operator1D& op, const Weight& w, double lo, double hi,
                          FunctionalKind kind) {
  const LevelRange r = indices_in(op, lo, hi);
  FunctionalValue out;
  out.cutoff = hi;
  out.kind = kind;
  bool first = true;
  for (int i = r.first_index; i <= r.last_index; ++i) {
    const EigenPair ep = sym_eigen_min(eigenspace_gram(op, i, w));
    if (first || ep.value < out.value) {
      out.value = ep.value;
      out.witness_index = i;
      out.witness_coeffs = ep.vector;
      first = false;
    }
  }
  return out;
}

void validate_weight(const PiecewiseWeight& w, double length) {
  if (w.breakpoints.size() < 2 || w.values.size() + 1 != w.breakpoints.size())
    throw std::invalid_argument("weight needs n+1 breakpoints for n cells");
  for (std::size_t c = 0; c + 1 < w.breakpoints.size(); ++c)
    if (!(w.breakpoints[c] < w.breakpoints[c + 1]))
      throw std::invalid_argument("weight breakpoints must be strictly increasing");
  const double tol = 1e-9 * length;
  if (std::abs(w.breakpoints.front()) > tol || std::abs(w.breakpoints.back() - length) > tol)
    throw std::invalid_argument("weight breakpoints must span the whole domain");
  for (double v : w.values)
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      throw std::invalid_argument("weight values must lie in [0, 1]");
}

}  // namespace

FunctionalValue g_1d(const Operator1D& op, const IntervalSet& omega, double lambda_max) {
  if (std::abs(omega.ambient_length() - op.length()) > 1e-9 * op.length())
    throw std::invalid_argument("set lives on a different interval than the operator");
  return g_1d_impl(op, omega, -1.0, lambda_max, FunctionalKind::GDirect);
}

FunctionalValue g_1d(const Operator1D& op, const PiecewiseWeight& weight, double lambda_max) {
  validate_weight(weight, op.length());
  return g_1d_impl(op, weight, -1.0, lambda_max, FunctionalKind::GDirect);
}

double sine_lower_bound(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("fraction must lie in [0, 1]");
  return 0.5 * (kPi * fraction - std::sin(kPi * fraction));
}

double sine_mass_bound(double fraction) {
  return sine_lower_bound(fraction) / (kPi / 2.0);
}

FunctionalValue g_composite_bound(const Operator1D& op1, const Operator1D& op2,
                                  const RectSet& omega, double lambda_max) {
  if (std::abs(omega.ambient_x() - op1.length()) > 1e-9 * op1.length() ||
      std::abs(omega.ambient_y() - op2.length()) > 1e-9 * op2.length())
    throw std::invalid_argument("set does not match the product domain");
  PiecewiseWeight w;
  w.breakpoints = omega.x_breakpoints();
  for (std::size_t c = 0; c + 1 < w.breakpoints.size(); ++c) {
    const double mid = 0.5 * (w.breakpoints[c] + w.breakpoints[c + 1]);
    const IntervalSet trace = omega.vertical_trace(mid);
    if (trace.components().empty()) {
      w.values.push_back(0.0);
    } else {
      w.values.push_back(g_1d(op2, trace, lambda_max).value);
    }
  }
  FunctionalValue out = g_1d(op1, w, lambda_max);
  out.kind = FunctionalKind::GCompositeBound;
  return out;
}

namespace {

FunctionalValue product_min(const std::vector<ProductLevel>& levels, const Operator1D& op1,
                            const Operator1D& op2, const RectSet& omega, double lo, double hi,
                            FunctionalKind kind) {
  if (std::abs(omega.ambient_x() - op1.length()) > 1e-9 * op1.length() ||
      std::abs(omega.ambient_y() - op2.length()) > 1e-9 * op2.length())
    throw std::invalid_argument("set does not match the product domain");
  FunctionalValue out;
  out.cutoff = hi;
  out.kind = kind;
  bool first = true;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const ProductLevel& lvl = levels[li];
    if (lvl.value < lo || lvl.value > hi) continue;
    // tensor basis of the whole collision class
    std::vector<std::pair<int, int>> basis;
    for (const auto& [i, j] : lvl.members)
      for (int p : eigenspace_basis(op1, i))
        for (int q : eigenspace_basis(op2, j)) basis.emplace_back(p, q);
    const int d = static_cast<int>(basis.size());
    SymMatrix g(d);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        double s = 0.0;
        for (const auto& r : omega.rects())
          s += pair_integral(basis[a].first, basis[b].first, r[0], r[1], op1) *
               pair_integral(basis[a].second, basis[b].second, r[2], r[3], op2);
        g.set(a, b, s);
      }
    const EigenPair ep = sym_eigen_min(g);
    if (first || ep.value < out.value) {
      out.value = ep.value;
      out.witness_index = static_cast<int>(li + 1);
      out.witness_coeffs = ep.vector;
      first = false;
    }
  }
  if (first) throw NotFoundError("no product eigenvalue inside the requested range");
  return out;
}

}  // namespace

FunctionalValue g_product_direct(const std::vector<ProductLevel>& levels,
                                 const Operator1D& op1, const Operator1D& op2,
                                 const RectSet& omega, double lambda_max) {
  return product_min(levels, op1, op2, omega, -1.0, lambda_max, FunctionalKind::GDirect);
}

FunctionalValue ql_liminf(const Operator1D& op, const IntervalSet& omega, double lambda_max,
                          double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0))
    throw std::invalid_argument("window fraction must lie in (0, 1)");
  if (std::abs(omega.ambient_length() - op.length()) > 1e-9 * op.length())
    throw std::invalid_argument("set lives on a different interval than the operator");
  return g_1d_impl(op, omega, window_fraction * lambda_max, lambda_max,
                   FunctionalKind::GPrimeLiminf);
}

FunctionalValue ql_liminf(const std::vector<ProductLevel>& levels, const Operator1D& op1,
                          const Operator1D& op2, const RectSet& omega, double lambda_max,
                          double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0))
    throw std::invalid_argument("window fraction must lie in (0, 1)");
  return product_min(levels, op1, op2, omega, window_fraction * lambda_max, lambda_max,
                     FunctionalKind::GPrimeLiminf);
}

}  // namespace speclab
