#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "speclab/model_spectra.hpp"

namespace speclab {

/// One distinct eigenvalue of the product operator, i.e. one class of index
/// pairs (i, j) with equal lambda1_i + lambda2_j.
struct ProductLevel {
  double value = 0.0;
  std::optional<std::pair<std::int64_t, std::int64_t>> exact;
  std::vector<std::pair<int, int>> members;  // 1-based factor indices, sorted
  int multiplicity = 0;                      // sum of m1_i * m2_j over members
};

/// All product eigenvalues lambda1_i + lambda2_j up to lambda_max, grouped by
/// equality. Exact grouping when both factors carry rational spectra;
/// otherwise floating sums are clustered at absolute tolerance `tol`
/// (default 1e-9 * lambda_max), and the grouping must be unambiguous:
/// cluster diameter <= tol, distinct clusters separated by > 2 tol.
std::vector<ProductLevel> build_product(const Operator1D& op1, const Operator1D& op2,
                                        double lambda_max, double tol = -1.0);

struct MmReport {
  bool minimal = true;
  /// Classes with more than one member, in increasing eigenvalue order.
  std::vector<ProductLevel> collisions;
};

/// The multiplicity of lambda1_i + lambda2_j is always at least m1_i * m2_j;
/// it equals it for every level below the cutoff iff no two index pairs
/// share an eigenvalue. This checks that, reporting every collision class.
MmReport check_mm(const Operator1D& op1, const Operator1D& op2, double lambda_max,
                  double tol = -1.0);

struct Dilatation {
  double s = 0.0;
  std::optional<std::pair<std::int64_t, std::int64_t>> exact_power;  // s_alpha = num/den
  int i = 0, j = 0, i2 = 0, j2 = 0;  // witness: (i,j) collides with (i2,j2)
};

/// Scaling factors s in [s_lo, s_hi] for which the product of op1 with op2
/// rescaled by s (eigenvalues s^alpha * lambda2_j) acquires a collision among
/// levels with both factor eigenvalues <= lambda_max. Solves
/// s^alpha = (lambda1_i - lambda1_i') / (lambda2_j' - lambda2_j) over all
/// admissible quadruples; exact rational ratios are deduplicated exactly.
std::vector<Dilatation> exceptional_dilatations(const Operator1D& op1, const Operator1D& op2,
                                                double alpha, double s_lo, double s_hi,
                                                double lambda_max);

/// Confirms a reported dilatation: rebuilds the product with op2's
/// eigenvalues scaled by s^alpha and checks the witness pair really collides.
bool recheck_dilatation(const Operator1D& op1, const Operator1D& op2, double alpha,
                        const Dilatation& d, double lambda_max);

}  // namespace speclab
