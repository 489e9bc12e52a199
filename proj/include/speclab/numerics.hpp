#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace speclab {

/// Dense real symmetric matrix. Only the upper triangle is stored, so
/// symmetry holds by construction.
class SymMatrix {
 public:
  explicit SymMatrix(int order);

  int order() const { return n_; }
  double at(int i, int j) const { return data_[pack(i, j)]; }
  void set(int i, int j, double value) { data_[pack(i, j)] = value; }

  /// Frobenius norm.
  double norm() const;

  static SymMatrix identity(int order);

 private:
  std::size_t pack(int i, int j) const;

  int n_;
  std::vector<double> data_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm, first nonzero entry positive
};

/// Smallest eigenvalue and a unit eigenvector of a symmetric matrix,
/// via cyclic Jacobi rotations to full diagonalization. Intended for the
/// small Gram matrices of eigenspace quadratic forms (n up to a few
/// hundred). Throws ComputationError if the sweep budget is exhausted or
/// the residual check ||Av - lambda v|| <= tol * ||A|| fails.
EigenPair sym_eigen_min(const SymMatrix& a, double tol = 1e-12);

/// All eigenvalues (ascending) by the same Jacobi diagonalization.
std::vector<double> sym_eigen_values(const SymMatrix& a, double tol = 1e-12);

struct CollisionQuadruple {
  int i = 0, j = 0;    // first index pair
  int i2 = 0, j2 = 0;  // second index pair, (i,j) < (i2,j2) lexicographically
};

/// n1/d1 + n2/d2 as a reduced fraction with positive denominator. Throws
/// ComputationError if the reduced result falls outside 64-bit range.
std::pair<std::int64_t, std::int64_t> rational_add(std::int64_t n1, std::int64_t d1,
                                                   std::int64_t n2, std::int64_t d2);

/// (n1/d1) / (n2/d2) reduced, denominator positive. n2 must be nonzero.
std::pair<std::int64_t, std::int64_t> rational_div(std::int64_t n1, std::int64_t d1,
                                                   std::int64_t n2, std::int64_t d2);

/// Exact collision test between two rational eigenvalue sequences: all
/// quadruples (i,j,i2,j2) with num1_i/den1_i + num2_j/den2_j equal to
/// num1_{i2}/den1_{i2} + num2_{j2}/den2_{j2} as exact rationals. Integer
/// arithmetic throughout; overflow past 128-bit intermediates throws
/// ComputationError rather than wrapping.
std::vector<CollisionQuadruple> rational_collisions(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& seq1,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& seq2);

}  // namespace speclab
