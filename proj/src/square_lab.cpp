#include "speclab/square_lab.hpp"

#include <cmath>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/model_spectra.hpp"
#include "speclab/parallel.hpp"

namespace speclab {

namespace {

// floor(sqrt(v)) in pure integer arithmetic (a float seed, then correction).
std::int64_t isqrt(std::int64_t v) {
  if (v < 0) throw std::invalid_argument("isqrt of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

Operator1D square_factor() {
  return Operator1D::with_pi_length(OperatorKind::DirichletInterval, 1, 1);
}

void check_square_domain(const RectSet& omega) {
  const double pi = 3.14159265358979323846;
  if (std::abs(omega.ambient_x() - pi) > 1e-9 || std::abs(omega.ambient_y() - pi) > 1e-9)
    throw std::invalid_argument("set must live on the pi-by-pi square");
}

}  // namespace

SquareEigenspace sum_two_squares(std::int64_t lambda) {
  if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  SquareEigenspace es;
  es.lambda = lambda;
  for (std::int64_t j = 1; j * j < lambda; ++j) {
    const std::int64_t rem = lambda - j * j;
    const std::int64_t k = isqrt(rem);
    if (k >= 1 && k * k == rem)
      es.pairs.emplace_back(static_cast<int>(j), static_cast<int>(k));
  }
  return es;
}

std::int64_t min_lambda_with_representations(int p, std::int64_t search_limit) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (search_limit < 2) throw std::invalid_argument("search_limit must be >= 2");
  for (std::int64_t lam = 2; lam <= search_limit; ++lam) {
    int unordered = 0;
    for (const auto& [j, k] : sum_two_squares(lam).pairs)
      if (j <= k) ++unordered;
    if (unordered >= p) return lam;
  }
  throw NotFoundError("no eigenvalue with enough representations below the search limit");
}

SymMatrix gram_matrix(const SquareEigenspace& es, const RectSet& omega) {
  if (es.pairs.empty()) throw std::invalid_argument("empty eigenspace has no Gram matrix");
  check_square_domain(omega);
  const Operator1D op = square_factor();
  const int d = static_cast<int>(es.pairs.size());
  SymMatrix g(d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      double s = 0.0;
      for (const auto& r : omega.rects())
        s += pair_integral(es.pairs[a].first, es.pairs[b].first, r[0], r[1], op) *
             pair_integral(es.pairs[a].second, es.pairs[b].second, r[2], r[3], op);
      g.set(a, b, s);
    }
  return g;
}

ComegaRecord c_omega(std::int64_t lambda, const RectSet& omega) {
  const SquareEigenspace es = sum_two_squares(lambda);
  if (es.pairs.empty())
    throw NotFoundError("lambda is not an eigenvalue of the Dirichlet square");
  const EigenPair ep = sym_eigen_min(gram_matrix(es, omega));
  ComegaRecord rec;
  rec.lambda = lambda;
  rec.c_value = ep.value;
  rec.witness_coeffs = ep.vector;
  return rec;
}

ComegaScan c_omega_scan(const RectSet& omega, std::int64_t lambda_max, int jobs) {
  if (lambda_max < 2) throw std::invalid_argument("lambda_max must be >= 2");
  check_square_domain(omega);
  std::vector<std::int64_t> lambdas;
  for (std::int64_t lam = 2; lam <= lambda_max; ++lam)
    if (!sum_two_squares(lam).pairs.empty()) lambdas.push_back(lam);

  ComegaScan scan;
  scan.table = parallel_map<ComegaRecord>(
      static_cast<int>(lambdas.size()), jobs,
      [&](int i) { return c_omega(lambdas[i], omega); });

  bool first = true;
  for (const auto& rec : scan.table) {
    if (first || rec.c_value < scan.min_c) {  // ties keep the smaller lambda
      scan.min_c = rec.c_value;
      scan.argmin_lambda = rec.lambda;
      first = false;
    }
  }
  if (first) throw NotFoundError("no eigenvalue at or below the cutoff");
  return scan;
}

}  // namespace speclab
