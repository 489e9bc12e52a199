#include "speclab/product_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "speclab/errors.hpp"
#include "speclab/numerics.hpp"

namespace speclab {

namespace {

// Factor eigenvalues actually below the cutoff (spectrum_up_to returns one
// extra entry past it).
std::vector<SpectrumEntry> entries_below(const Operator1D& op, double lambda_max) {
  auto all = spectrum_up_to(op, lambda_max);
  while (!all.empty() && all.back().eigenvalue > lambda_max) all.pop_back();
  return all;
}

std::vector<ProductLevel> group_exact(const std::vector<SpectrumEntry>& s1,
                                      const std::vector<SpectrumEntry>& s2,
                                      double lambda_max) {
  std::map<std::pair<std::int64_t, std::int64_t>, ProductLevel> classes;
  for (const auto& e1 : s1)
    for (const auto& e2 : s2) {
      const double val = e1.eigenvalue + e2.eigenvalue;
      if (val > lambda_max) continue;
      const auto key = rational_add(e1.exact->first, e1.exact->second,
                                    e2.exact->first, e2.exact->second);
      auto& lvl = classes[key];
      lvl.exact = key;
      lvl.members.push_back({e1.index, e2.index});
      lvl.multiplicity += e1.multiplicity * e2.multiplicity;
    }
  std::vector<ProductLevel> out;
  out.reserve(classes.size());
  for (auto& [key, lvl] : classes) {
    lvl.value = static_cast<double>(key.first) / static_cast<double>(key.second);
    std::sort(lvl.members.begin(), lvl.members.end());
    out.push_back(std::move(lvl));
  }
  std::sort(out.begin(), out.end(), [](const ProductLevel& a, const ProductLevel& b) {
    const __int128 lhs = static_cast<__int128>(a.exact->first) * b.exact->second;
    const __int128 rhs = static_cast<__int128>(b.exact->first) * a.exact->second;
    return lhs < rhs;
  });
  return out;
}

std::vector<ProductLevel> group_floating(const std::vector<SpectrumEntry>& s1,
                                         const std::vector<SpectrumEntry>& s2,
                                         double lambda_max, double tol) {
  struct Item {
    double value;
    int i, j, mult;
  };
  std::vector<Item> items;
  for (const auto& e1 : s1)
    for (const auto& e2 : s2) {
      const double val = e1.eigenvalue + e2.eigenvalue;
      if (val > lambda_max) continue;
      items.push_back({val, e1.index, e2.index, e1.multiplicity * e2.multiplicity});
    }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.value < b.value; });

  // Single-linkage: consecutive sums within tol join one cluster. The result
  // is only trusted when clusters are tight (diameter <= tol) and mutually
  // separated (> 2 tol); anything between is ambiguous and refused.
  std::vector<ProductLevel> out;
  std::size_t start = 0;
  while (start < items.size()) {
    std::size_t end = start + 1;
    while (end < items.size() && items[end].value - items[end - 1].value <= tol) ++end;
    const double diameter = items[end - 1].value - items[start].value;
    if (diameter > tol)
      throw ComputationError("eigenvalue clustering is ambiguous: cluster diameter " +
                             std::to_string(diameter) + " exceeds tolerance");
    if (end < items.size() && items[end].value - items[end - 1].value <= 2.0 * tol)
      throw ComputationError("eigenvalue clustering is ambiguous: clusters separated by "
                             "less than twice the tolerance");
    ProductLevel lvl;
    double sum = 0.0;
    for (std::size_t k = start; k < end; ++k) {
      sum += items[k].value;
      lvl.members.push_back({items[k].i, items[k].j});
      lvl.multiplicity += items[k].mult;
    }
    lvl.value = sum / static_cast<double>(end - start);
    std::sort(lvl.members.begin(), lvl.members.end());
    out.push_back(std::move(lvl));
    start = end;
  }
  return out;
}

}  // namespace

std::vector<ProductLevel> build_product(const Operator1D& op1, const Operator1D& op2,
                                        double lambda_max, double tol) {
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
  const auto s1 = entries_below(op1, lambda_max);
  const auto s2 = entries_below(op2, lambda_max);
  const bool exact = !s1.empty() && !s2.empty() && s1.front().exact && s2.front().exact;
  if (exact) return group_exact(s1, s2, lambda_max);
  if (tol < 0.0) tol = 1e-9 * lambda_max;
  return group_floating(s1, s2, lambda_max, tol);
}

MmReport check_mm(const Operator1D& op1, const Operator1D& op2, double lambda_max,
                  double tol) {
  MmReport rep;
  for (auto& lvl : build_product(op1, op2, lambda_max, tol)) {
    if (lvl.members.size() > 1) {
      rep.minimal = false;
      rep.collisions.push_back(std::move(lvl));
    }
  }
  return rep;
}

std::vector<Dilatation> exceptional_dilatations(const Operator1D& op1, const Operator1D& op2,
                                                double alpha, double s_lo, double s_hi,
                                                double lambda_max) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(0.0 < s_lo && s_lo <= s_hi)) throw std::invalid_argument("need 0 < s_lo <= s_hi");
  const auto s1 = entries_below(op1, lambda_max);
  const auto s2 = entries_below(op2, lambda_max);
  const bool exact = !s1.empty() && !s2.empty() && s1.front().exact && s2.front().exact;

  // Collisions of the scaled product solve
  //   lambda1_i + s^a mu_j == lambda1_i' + s^a mu_j'
  // i.e. s^a equals a positive difference ratio. Sweep ordered quadruples
  // with lambda1_i > lambda1_i' and mu_j' > mu_j so the ratio is positive.
  const double plo = std::pow(s_lo, alpha), phi = std::pow(s_hi, alpha);

  struct Found {
    double p;  // s^alpha
    std::optional<std::pair<std::int64_t, std::int64_t>> exact_p;
    Dilatation d;
  };
  std::vector<Found> found;
  for (std::size_t a = 0; a < s1.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      const double dl = s1[a].eigenvalue - s1[b].eigenvalue;  // > 0
      if (dl == 0.0) continue;
      for (std::size_t c = 0; c < s2.size(); ++c)
        for (std::size_t d = c + 1; d < s2.size(); ++d) {
          const double dm = s2[d].eigenvalue - s2[c].eigenvalue;  // > 0
          if (dm == 0.0) continue;
          const double p = dl / dm;
          if (p < plo * (1 - 1e-12) || p > phi * (1 + 1e-12)) continue;
          const double s = std::pow(p, 1.0 / alpha);
          // keep only collisions among levels inside the cutoff at this s
          if (s1[a].eigenvalue + p * s2[c].eigenvalue > lambda_max * (1 + 1e-12)) continue;
          Found f;
          f.p = p;
          if (exact) {
            const auto num = rational_add(s1[a].exact->first, s1[a].exact->second,
                                          -s1[b].exact->first, s1[b].exact->second);
            const auto den = rational_add(s2[d].exact->first, s2[d].exact->second,
                                          -s2[c].exact->first, s2[c].exact->second);
            f.exact_p = rational_div(num.first, num.second, den.first, den.second);
          }
          f.d.s = s;
          f.d.exact_power = f.exact_p;
          f.d.i = s1[a].index;
          f.d.j = s2[c].index;
          f.d.i2 = s1[b].index;
          f.d.j2 = s2[d].index;
          found.push_back(std::move(f));
        }
    }

  // Deduplicate equal scaling factors, keeping the lexicographically first
  // witness. Exact ratios compare exactly; floating ones at relative 1e-12.
  std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) {
    if (x.p != y.p) return x.p < y.p;
    return std::tie(x.d.i, x.d.j, x.d.i2, x.d.j2) < std::tie(y.d.i, y.d.j, y.d.i2, y.d.j2);
  });
  std::vector<Dilatation> out;
  for (const auto& f : found) {
    const bool same =
        !out.empty() &&
        (f.exact_p && out.back().exact_power ? *f.exact_p == *out.back().exact_power
                                             : std::abs(f.d.s - out.back().s) <=
                                                   1e-12 * std::max(1.0, out.back().s));
    if (!same) out.push_back(f.d);
  }
  return out;
}

bool recheck_dilatation(const Operator1D& op1, const Operator1D& op2, double alpha,
                        const Dilatation& d, double lambda_max) {
  const double p = std::pow(d.s, alpha);
  const double v1 = op1.eigenvalue(d.i) + p * op2.eigenvalue(d.j);
  const double v2 = op1.eigenvalue(d.i2) + p * op2.eigenvalue(d.j2);
  const double scale = std::max({std::abs(v1), std::abs(v2), 1.0});
  if (std::abs(v1 - v2) > 1e-9 * scale) return false;
  // both members must sit below the cutoff for the collision to count
  return v1 <= lambda_max * (1 + 1e-12);
}

}  // namespace speclab
