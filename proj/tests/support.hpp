// Statistical helpers shared by the unit tests. Independent of the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace testing {

/// Normal-approximation z-score of a chi-square statistic with k-1 dof after
/// merging adjacent bins until each expects at least five counts.
inline double chi_square_z(std::vector<double> observed, std::vector<double> expected) {
  std::vector<double> o, e;
  double acc_o = 0, acc_e = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= 5.0) {
      o.push_back(acc_o);
      e.push_back(acc_e);
      acc_o = acc_e = 0;
    }
  }
  if (acc_e > 0 && !e.empty()) {
    o.back() += acc_o;
    e.back() += acc_e;
  }
  double chi2 = 0;
  for (std::size_t i = 0; i < o.size(); ++i) chi2 += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  const double dof = static_cast<double>(o.size()) - 1.0;
  return (chi2 - dof) / std::sqrt(2.0 * dof);
}

/// |successes - n p| / sqrt(n p (1-p)).
inline double binomial_z(double successes, double n, double p) {
  return std::fabs(successes - n * p) / std::sqrt(n * p * (1.0 - p));
}

inline double poisson_pmf(double mean, long k) {
  return std::exp(k * std::log(mean) - mean - std::lgamma(static_cast<double>(k) + 1.0));
}

/// sqrt(n) times the Kolmogorov-Smirnov distance to Uniform(0, hi).
inline double ks_uniform(std::vector<double> xs, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = xs[i] / hi;
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d * std::sqrt(n);
}

inline double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace testing
