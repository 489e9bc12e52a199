#include "speclab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "speclab/errors.hpp"

namespace speclab {

SymMatrix::SymMatrix(int order) : n_(order) {
  if (order < 1) throw std::invalid_argument("SymMatrix: order must be >= 1");
  data_.assign(static_cast<std::size_t>(n_) * (n_ + 1) / 2, 0.0);
}

std::size_t SymMatrix::pack(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("SymMatrix: index out of range");
  if (i > j) std::swap(i, j);
  // row-major upper triangle
  return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
         (j - i);
}

double SymMatrix::norm() const {
  double sum = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) sum += at(i, j) * at(i, j);
  return std::sqrt(sum);
}

SymMatrix SymMatrix::identity(int order) {
  SymMatrix m(order);
  for (int i = 0; i < order; ++i) m.set(i, i, 1.0);
  return m;
}

namespace {

constexpr int kJacobiSweepBudget = 30;

double off_norm(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sum += 2.0 * a[i * n + j] * a[i * n + j];
  return std::sqrt(sum);
}

// Full cyclic Jacobi on a dense copy; returns diagonal and accumulated
// rotations (columns of v are eigenvectors).
void jacobi_diagonalize(const SymMatrix& in, double tol, std::vector<double>& a,
                        std::vector<double>& v) {
  const int n = in.order();
  a.assign(static_cast<std::size_t>(n) * n, 0.0);
  v.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    for (int j = 0; j < n; ++j) a[i * n + j] = in.at(i, j);
  }
  const double scale = in.norm();
  if (scale == 0.0 || n == 1) return;

  for (int sweep = 0; sweep < kJacobiSweepBudget; ++sweep) {
    if (off_norm(a, n) <= tol * scale) return;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm(a, n) > tol * scale)
    throw ComputationError("sym_eigen_min: Jacobi sweep budget exhausted");
}

void fix_sign(std::vector<double>& vec) {
  for (double x : vec) {
    if (x != 0.0) {
      if (x < 0.0)
        for (double& y : vec) y = -y;
      return;
    }
  }
}

}  // namespace

EigenPair sym_eigen_min(const SymMatrix& in, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("sym_eigen_min: tol must be positive");
  const int n = in.order();
  std::vector<double> a, v;
  jacobi_diagonalize(in, tol, a, v);

  int arg = 0;
  for (int i = 1; i < n; ++i)
    if (a[i * n + i] < a[arg * n + arg]) arg = i;

  EigenPair out;
  out.value = a[arg * n + arg];
  out.vector.resize(n);
  double norm = 0.0;
  for (int k = 0; k < n; ++k) {
    out.vector[k] = v[k * n + arg];
    norm += out.vector[k] * out.vector[k];
  }
  norm = std::sqrt(norm);
  for (double& x : out.vector) x /= norm;
  fix_sign(out.vector);

  // residual check ||Av - lambda v|| <= tol * ||A||
  const double scale = in.norm();
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += in.at(i, j) * out.vector[j];
    row -= out.value * out.vector[i];
    res += row * row;
  }
  if (std::sqrt(res) > tol * std::max(scale, 1e-300))
    throw ComputationError("sym_eigen_min: residual exceeds tolerance");
  return out;
}

std::vector<double> sym_eigen_values(const SymMatrix& in, double tol) {
  const int n = in.order();
  std::vector<double> a, v;
  jacobi_diagonalize(in, tol, a, v);
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = a[i * n + i];
  std::sort(vals.begin(), vals.end());
  return vals;
}

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw ComputationError("rational arithmetic overflow (128-bit product)");
  return out;
}

i128 checked_add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out))
    throw ComputationError("rational arithmetic overflow (128-bit sum)");
  return out;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Rat {
  i128 num = 0;
  i128 den = 1;  // > 0, reduced

  bool operator<(const Rat& o) const {
    if (num != o.num) return num < o.num;
    return den < o.den;
  }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
};

Rat reduced(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rat{num, den};
}

Rat rat_sum(std::int64_t n1, std::int64_t d1, std::int64_t n2, std::int64_t d2) {
  if (d1 <= 0 || d2 <= 0) throw std::invalid_argument("denominators must be positive");
  const i128 num = checked_add(checked_mul(n1, d2), checked_mul(n2, d1));
  const i128 den = checked_mul(d1, d2);
  return reduced(num, den);
}

}  // namespace

namespace {

std::pair<std::int64_t, std::int64_t> narrow64(const Rat& r, const char* what) {
  constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
  if (r.num < lo || r.num > hi || r.den > hi)
    throw ComputationError(std::string(what) + " leaves 64-bit range");
  return {static_cast<std::int64_t>(r.num), static_cast<std::int64_t>(r.den)};
}

}  // namespace

std::pair<std::int64_t, std::int64_t> rational_add(std::int64_t n1, std::int64_t d1,
                                                   std::int64_t n2, std::int64_t d2) {
  return narrow64(rat_sum(n1, d1, n2, d2), "rational sum");
}

std::pair<std::int64_t, std::int64_t> rational_div(std::int64_t n1, std::int64_t d1,
                                                   std::int64_t n2, std::int64_t d2) {
  if (d1 <= 0 || d2 <= 0) throw std::invalid_argument("denominators must be positive");
  if (n2 == 0) throw std::invalid_argument("division by a zero rational");
  return narrow64(reduced(checked_mul(n1, d2), checked_mul(d1, n2)), "rational quotient");
}

std::vector<CollisionQuadruple> rational_collisions(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& seq1,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& seq2) {
  // group all (i,j) by the exact value of seq1[i] + seq2[j]
  std::map<Rat, std::vector<std::pair<int, int>>> classes;
  for (std::size_t i = 0; i < seq1.size(); ++i)
    for (std::size_t j = 0; j < seq2.size(); ++j)
      classes[rat_sum(seq1[i].first, seq1[i].second, seq2[j].first, seq2[j].second)]
          .push_back({static_cast<int>(i + 1), static_cast<int>(j + 1)});

  std::vector<CollisionQuadruple> out;
  for (auto& [sum, members] : classes) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        out.push_back({members[a].first, members[a].second, members[b].first,
                       members[b].second});
  }
  std::sort(out.begin(), out.end(), [](const CollisionQuadruple& x, const CollisionQuadruple& y) {
    return std::tie(x.i, x.j, x.i2, x.j2) < std::tie(y.i, y.j, y.i2, y.j2);
  });
  return out;
}

}  // namespace speclab
