#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "speclab/numerics.hpp"
#include "speclab/set_algebra.hpp"

namespace speclab {

/// Eigenspace of the Dirichlet Laplacian on [0, pi]^2 at an integer
/// eigenvalue: all (j, k) with j^2 + k^2 = lambda, j, k >= 1.
struct SquareEigenspace {
  std::int64_t lambda = 0;
  std::vector<std::pair<int, int>> pairs;  // sorted lexicographically
};

struct ComegaRecord {
  std::int64_t lambda = 0;
  double c_value = 0.0;                 // least mass over the eigenspace
  std::vector<double> witness_coeffs;   // unit vector over pairs
};

/// Exact enumeration of the representations lambda = j^2 + k^2 with
/// j, k >= 1, via integer square roots. Empty when lambda is not such a sum.
SquareEigenspace sum_two_squares(std::int64_t lambda);

/// Smallest lambda <= search_limit with at least p unordered representations
/// as a sum of two positive squares. Throws NotFoundError past the limit.
std::int64_t min_lambda_with_representations(int p, std::int64_t search_limit);

/// Gram matrix of the eigenspace basis (2/pi) sin(jx) sin(ky) over omega,
/// entries summed over omega's rectangles from 1D closed-form integrals.
SymMatrix gram_matrix(const SquareEigenspace& es, const RectSet& omega);

/// Least Gram eigenvalue at a single eigenvalue: the sharpest constant c with
/// mass(phi, omega) >= c for every normalized eigenfunction at this lambda.
ComegaRecord c_omega(std::int64_t lambda, const RectSet& omega);

struct ComegaScan {
  double min_c = 0.0;
  std::int64_t argmin_lambda = 0;
  std::vector<ComegaRecord> table;  // one record per eigenvalue <= cutoff
};

/// c_omega at every eigenvalue lambda <= lambda_max, with the running
/// minimum. `jobs` threads share the work; the result does not depend on it.
ComegaScan c_omega_scan(const RectSet& omega, std::int64_t lambda_max, int jobs = 1);

}  // namespace speclab
