#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "heavytail/rng.hpp"
#include "heavytail/rv_dist.hpp"

namespace heavytail {

// Frechet law with CDF exp(-x^{-shape}) on x > 0.
struct FrechetLaw {
  double shape;
};

inline double frechet_cdf(const FrechetLaw& law, double x) {
  if (!(law.shape > 0.0)) throw std::invalid_argument("frechet shape must be positive");
  if (x <= 0.0) return 0.0;
  return std::exp(-std::pow(x, -law.shape));
}

inline double frechet_quantile(const FrechetLaw& law, double q) {
  if (!(law.shape > 0.0)) throw std::invalid_argument("frechet shape must be positive");
  if (!(q > 0.0) || !(q < 1.0)) throw std::domain_error("frechet_quantile needs q in (0,1)");
  return std::pow(-std::log(q), -1.0 / law.shape);
}

// Points Gamma_i^{-2/alpha} of the limiting Poisson process, where Gamma_i
// are cumulative sums of iid standard exponentials. Strictly descending.
inline Eigen::VectorXd gamma_points(long count, double alpha, Stream& rng) {
  if (count < 1) throw std::invalid_argument("gamma_points: count must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma_points: alpha must be positive");
  Eigen::VectorXd pts(count);
  double gamma = 0.0;
  for (long i = 0; i < count; ++i) {
    gamma += rng.exponential();
    pts(i) = std::pow(gamma, -2.0 / alpha);
  }
  return pts;
}

// Two-sided Kolmogorov-Smirnov distance of an ascending sample to a CDF.
inline double ks_statistic(const Eigen::Ref<const Eigen::VectorXd>& sorted_ascending,
                           const std::function<double(double)>& cdf) {
  const long m = sorted_ascending.size();
  if (m < 1) throw std::invalid_argument("ks_statistic: empty sample");
  double d = 0.0;
  for (long i = 0; i < m; ++i) {
    if (i + 1 < m && sorted_ascending(i) > sorted_ascending(i + 1))
      throw std::invalid_argument("ks_statistic: sample is not sorted ascending");
    const double F = cdf(sorted_ascending(i));
    d = std::max(d, std::max(F - static_cast<double>(i) / m,
                             static_cast<double>(i + 1) / m - F));
  }
  return d;
}

enum class Centering { none, n_second_moment, maxnp_second_moment };

// Centering constant for scaled eigenvalue points: 0, n E[Z^2], or
// (n v p) E[Z^2]. Requires a finite second moment for the non-zero modes.
inline double centering_value(const TailModel& m, long n, long p, Centering mode) {
  if (mode == Centering::none) return 0.0;
  if (!has_finite_second_moment(m))
    throw std::domain_error("centering requires a finite second moment (alpha > 2)");
  const double factor = mode == Centering::n_second_moment
                            ? static_cast<double>(n)
                            : static_cast<double>(std::max(n, p));
  return factor * second_moment(m);
}

// First k scaled points (lambda_(i) - centering) / a_np_sq.
inline Eigen::VectorXd top_k(const Eigen::Ref<const Eigen::VectorXd>& eigs_desc,
                             double a_np_sq, long k, double centering = 0.0) {
  if (k < 1 || k > eigs_desc.size()) throw std::invalid_argument("top_k: k outside [1, size]");
  if (!(a_np_sq > 0.0)) throw std::invalid_argument("top_k: a_np_sq must be positive");
  return (eigs_desc.head(k).array() - centering) / a_np_sq;
}

// First k scaled spacings (lambda_(i) - lambda_(i+1)) / a_np_sq; centering cancels.
inline Eigen::VectorXd spacings(const Eigen::Ref<const Eigen::VectorXd>& eigs_desc,
                                double a_np_sq, long k) {
  if (k < 1 || k + 1 > eigs_desc.size())
    throw std::invalid_argument("spacings: needs k+1 eigenvalues");
  if (!(a_np_sq > 0.0)) throw std::invalid_argument("spacings: a_np_sq must be positive");
  return (eigs_desc.head(k) - eigs_desc.segment(1, k)) / a_np_sq;
}

// lambda_(1) / sum(lambda_i); scale-free self-normalization.
inline double trace_ratio(const Eigen::Ref<const Eigen::VectorXd>& eigs_desc) {
  if (eigs_desc.size() < 1) throw std::invalid_argument("trace_ratio: empty spectrum");
  const double total = eigs_desc.sum();
  if (total == 0.0) throw std::domain_error("trace_ratio: zero trace");
  return eigs_desc(0) / total;
}

// One draw of the limiting trace ratio Gamma_1^{-2/alpha} / sum_i Gamma_i^{-2/alpha},
// series truncated after `truncation` terms. The dropped tail is below
// truncation^{1-2/alpha}/(2/alpha - 1) for alpha < 2 (Gamma_i ~ i).
inline double trace_ratio_limit_draw(double alpha, long truncation, Stream& rng) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("trace ratio limit needs alpha in (0,2)");
  const Eigen::VectorXd pts = gamma_points(truncation, alpha, rng);
  return pts(0) / pts.sum();
}

}  // namespace heavytail
