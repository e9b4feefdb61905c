#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heavytail/spectra.hpp"

namespace heavytail {

// Row sums of squared entries: the diagonal of Z Z'.
inline Eigen::VectorXd row_sums(const Eigen::Ref<const Eigen::MatrixXd>& Z) {
  return Z.array().square().rowwise().sum();
}

// Column sums of squared entries: the diagonal of Z'Z.
inline Eigen::VectorXd col_sums(const Eigen::Ref<const Eigen::MatrixXd>& Z) {
  return Z.array().square().colwise().sum();
}

// Largest m squared entries of Z, descending.
inline Eigen::VectorXd squared_order_stats(const Eigen::Ref<const Eigen::MatrixXd>& Z, long m) {
  const long total = static_cast<long>(Z.size());
  if (m < 1 || m > total) throw std::invalid_argument("squared_order_stats: m outside [1, p*n]");
  std::vector<double> sq(Z.data(), Z.data() + Z.size());
  for (double& v : sq) v *= v;
  std::partial_sort(sq.begin(), sq.begin() + m, sq.end(), std::greater<double>());
  return Eigen::Map<const Eigen::VectorXd>(sq.data(), m);
}

// Indices (0-based) ordering values descending; ties broken by lower index.
inline std::vector<long> rank_permutation(const Eigen::Ref<const Eigen::VectorXd>& values) {
  std::vector<long> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), 0L);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](long a, long b) { return values(a) > values(b); });
  return idx;
}

enum class GramSide { automatic, rows, cols };

// ||G - diag(G)||_2 / a_np_sq for the Gram matrix of the chosen side;
// automatic picks the smaller Gram (rows when p <= n), matching the regime
// split between the two hollow-norm limit statements.
inline double offdiag_ratio(const Eigen::Ref<const Eigen::MatrixXd>& Z, double a_np_sq,
                            GramSide side = GramSide::automatic) {
  if (!(a_np_sq > 0.0)) throw std::invalid_argument("offdiag_ratio: a_np_sq must be positive");
  const bool use_rows =
      side == GramSide::rows || (side == GramSide::automatic && Z.rows() <= Z.cols());
  Eigen::MatrixXd G = use_rows ? Eigen::MatrixXd(Z * Z.transpose())
                               : Eigen::MatrixXd(Z.transpose() * Z);
  G.diagonal().setZero();
  G = 0.5 * (G + G.transpose());
  return eigh_sym(G, false).values.cwiseAbs().maxCoeff() / a_np_sq;
}

// Scaled sup-distances between the spectrum and its three deterministic
// approximations: sorted row sums (err_row), sorted column sums zero-padding
// the spectrum past p (err_col), and squared order statistics (err_order).
struct ApproxErrors {
  double err_row;
  double err_col;
  double err_order;
  double offdiag_ratio;
  double a_np_sq;
};

inline ApproxErrors approx_errors(const Eigen::Ref<const Eigen::MatrixXd>& Z, double a_np_sq,
                                  const Eigen::Ref<const Eigen::VectorXd>& spectrum,
                                  GramSide side = GramSide::automatic) {
  const long p = Z.rows(), n = Z.cols();
  if (spectrum.size() != p) throw std::invalid_argument("approx_errors: spectrum length != p");
  if (!(a_np_sq > 0.0)) throw std::invalid_argument("approx_errors: a_np_sq must be positive");

  Eigen::VectorXd rows = row_sums(Z);
  std::sort(rows.data(), rows.data() + rows.size(), std::greater<double>());
  double err_row = (spectrum - rows).cwiseAbs().maxCoeff() / a_np_sq;

  Eigen::VectorXd cols = col_sums(Z);
  std::sort(cols.data(), cols.data() + cols.size(), std::greater<double>());
  double err_col = 0.0;
  for (long i = 0; i < n; ++i) {
    const double lam = i < p ? spectrum(i) : 0.0;
    err_col = std::max(err_col, std::abs(lam - cols(i)));
  }
  err_col /= a_np_sq;

  const Eigen::VectorXd order = squared_order_stats(Z, p);
  const double err_order = (spectrum - order).cwiseAbs().maxCoeff() / a_np_sq;

  return {err_row, err_col, err_order, offdiag_ratio(Z, a_np_sq, side), a_np_sq};
}

// How close the k-th eigenvector (k-th largest eigenvalue, 1-based) is to the
// basis vector of the k-th largest row sum. distance minimizes over the sign:
// min ||v -+ e|| = sqrt(2 - 2|v_L|).
struct LocalizationReport {
  long k;
  long row_index;  // 0-based position L_k of the k-th largest row sum
  double distance;
  double mass_top;  // largest squared component of v_k
};

inline LocalizationReport localization(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                       const SpectralResult& spectrum, long k) {
  if (!spectrum.vectors) throw std::invalid_argument("localization needs eigenvectors");
  const Eigen::MatrixXd& V = *spectrum.vectors;
  if (k < 1 || k > V.cols()) throw std::invalid_argument("localization: k outside [1, columns]");
  const std::vector<long> order = rank_permutation(row_sums(Z));
  const long L = order[static_cast<std::size_t>(k - 1)];
  const Eigen::VectorXd v = V.col(k - 1);
  const double distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(v(L))));
  return {k, L, distance, v.cwiseAbs2().maxCoeff()};
}

// Residual-based eigenvector perturbation certificate 2e/(gap - e) with
// e = ||Hv - lam v||; empty when gap <= e and the bound is vacuous.
struct PerturbationBound {
  double residual;
  std::optional<double> bound;
};

inline PerturbationBound perturbation_certificate(const Eigen::Ref<const Eigen::MatrixXd>& H,
                                                  const Eigen::Ref<const Eigen::VectorXd>& v,
                                                  double lam, double gap) {
  if (H.rows() != H.cols() || H.rows() != v.size())
    throw std::invalid_argument("perturbation_certificate: shape mismatch");
  if (!(gap > 0.0)) throw std::invalid_argument("perturbation_certificate: gap must be positive");
  const double eps = (H * v - lam * v).norm();
  if (gap <= eps) return {eps, std::nullopt};
  return {eps, 2.0 * eps / (gap - eps)};
}

}  // namespace heavytail
