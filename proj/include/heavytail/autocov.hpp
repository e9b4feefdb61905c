#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>

#include "heavytail/diagnostics.hpp"
#include "heavytail/matgen.hpp"
#include "heavytail/spectra.hpp"

namespace heavytail {

// Generalized sample autocovariance Z(0,0) Z(s,k)', a p-by-p matrix with
// entries sum_t Z_{i,t} Z_{j-s,t-k}. Shifts must fit inside the field pads.
inline Eigen::MatrixXd autocov_matrix(const DataField& field, long s, long k) {
  return field.base() * field.shifted_view(s, k).transpose();
}

// Singular-value diagnostics of one (s,k) lag. top_norm is always present;
// the err fields compare against the base-matrix row sums, column sums, and
// squared order statistics over the truncated ranges p-|s| / n-|s| and are
// meaningful (and populated) only for k = 0.
struct LagDiagnostics {
  double top_norm;
  std::optional<double> err_row;
  std::optional<double> err_col;
  std::optional<double> err_order;
};

inline LagDiagnostics lag_diagnostics(const DataField& field, long s, long k, double a_np_sq) {
  if (!(a_np_sq > 0.0)) throw std::invalid_argument("lag_diagnostics: a_np_sq must be positive");
  const long p = field.rows(), n = field.cols();
  const Eigen::VectorXd sv = singular_values(autocov_matrix(field, s, k));
  LagDiagnostics out{sv(0) / a_np_sq, std::nullopt, std::nullopt, std::nullopt};
  if (k != 0) return out;

  const auto lam = [&](long i) { return i < sv.size() ? sv(i) : 0.0; };  // zero past rank
  const long cut = std::labs(s);

  Eigen::VectorXd rows = row_sums(field.base());
  std::sort(rows.data(), rows.data() + rows.size(), std::greater<double>());
  double er = 0.0;
  for (long i = 0; i < p - cut; ++i) er = std::max(er, std::abs(lam(i) - rows(i)));
  out.err_row = er / a_np_sq;

  Eigen::VectorXd cols = col_sums(field.base());
  std::sort(cols.data(), cols.data() + cols.size(), std::greater<double>());
  double ec = 0.0;
  for (long i = 0; i < std::min(n - cut, n); ++i) ec = std::max(ec, std::abs(lam(i) - cols(i)));
  out.err_col = ec / a_np_sq;

  const Eigen::VectorXd order = squared_order_stats(field.base(), std::max(p - cut, 1L));
  double eo = 0.0;
  for (long i = 0; i < p - cut; ++i) eo = std::max(eo, std::abs(lam(i) - order(i)));
  out.err_order = eo / a_np_sq;
  return out;
}

// Row i holds the scaled top-i singular values across row shifts s = 0..max_lag
// at time lag 0: entry (i,s) = lambda_(i+1)(s,0) / a_np_sq. The limit points
// share one Gamma sequence across the lag coordinates.
inline Eigen::MatrixXd joint_lag_points(const DataField& field, long max_lag, double a_np_sq,
                                        long k_top) {
  if (max_lag < 0) throw std::invalid_argument("joint_lag_points: max_lag must be >= 0");
  if (k_top < 1 || k_top > field.rows())
    throw std::invalid_argument("joint_lag_points: k_top outside [1, p]");
  if (!(a_np_sq > 0.0)) throw std::invalid_argument("joint_lag_points: a_np_sq must be positive");
  Eigen::MatrixXd pts(k_top, max_lag + 1);
  for (long s = 0; s <= max_lag; ++s)
    pts.col(s) = singular_values(autocov_matrix(field, s, 0)).head(k_top) / a_np_sq;
  return pts;
}

}  // namespace heavytail
