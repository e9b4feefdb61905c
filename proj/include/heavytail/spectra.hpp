#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace heavytail {

// Eigenvalues sorted descending; vector columns, when present, are
// orthonormal, aligned with values, and sign-fixed so the component of
// largest magnitude is positive.
struct SpectralResult {
  Eigen::VectorXd values;
  std::optional<Eigen::MatrixXd> vectors;
};

namespace detail {

inline void fix_signs(Eigen::MatrixXd& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::Index imax = 0;
    V.col(j).cwiseAbs().maxCoeff(&imax);
    if (V(imax, j) < 0.0) V.col(j) = -V.col(j);
  }
}

}  // namespace detail

// Dense symmetric eigendecomposition. Rejects non-finite entries and
// asymmetry beyond 1e-10 relative.
inline SpectralResult eigh_sym(const Eigen::Ref<const Eigen::MatrixXd>& M,
                               bool want_vectors = true) {
  if (M.rows() != M.cols()) throw std::invalid_argument("eigh_sym needs a square matrix");
  if (!M.allFinite()) throw std::invalid_argument("eigh_sym: non-finite entries");
  const double scale = M.cwiseAbs().maxCoeff();
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * (scale > 0.0 ? scale : 1.0))
    throw std::invalid_argument("eigh_sym: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      M, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh_sym: solver failed");

  SpectralResult out;
  out.values = solver.eigenvalues().reverse();
  if (want_vectors) {
    Eigen::MatrixXd V = solver.eigenvectors().rowwise().reverse();
    detail::fix_signs(V);
    out.vectors = std::move(V);
  }
  return out;
}

// Spectrum of Z Z' computed from the smaller Gram side. Values have length
// p = rows(Z), zero-padded past the rank when p > n. With want_vectors, left
// vectors are recovered (one column per eigenvalue above the rank cutoff when
// recovered from Z'Z) and re-orthonormalized.
inline SpectralResult gram_eigs(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                bool want_vectors = false) {
  const Eigen::Index p = Z.rows(), n = Z.cols();
  if (p == 0 || n == 0) throw std::invalid_argument("gram_eigs: empty matrix");
  if (!Z.allFinite()) throw std::invalid_argument("gram_eigs: non-finite entries");

  if (p <= n) {
    Eigen::MatrixXd G = Z * Z.transpose();
    G = 0.5 * (G + G.transpose());  // exact symmetry despite rounding
    return eigh_sym(G, want_vectors);
  }

  Eigen::MatrixXd G = Z.transpose() * Z;
  G = 0.5 * (G + G.transpose());
  SpectralResult small = eigh_sym(G, want_vectors);

  SpectralResult out;
  out.values = Eigen::VectorXd::Zero(p);
  out.values.head(n) = small.values;
  if (want_vectors) {
    const double cutoff = 1e-12 * std::max(small.values(0), 0.0);
    Eigen::Index keep = 0;
    while (keep < n && small.values(keep) > cutoff) ++keep;
    Eigen::MatrixXd V(p, keep);
    for (Eigen::Index j = 0; j < keep; ++j)
      V.col(j) = Z * small.vectors->col(j) / std::sqrt(small.values(j));
    // modified Gram-Schmidt keeps the eigenvalue alignment
    for (Eigen::Index j = 0; j < keep; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) V.col(j) -= V.col(i).dot(V.col(j)) * V.col(i);
      V.col(j).normalize();
    }
    detail::fix_signs(V);
    out.vectors = std::move(V);
  }
  return out;
}

// Singular values of A, descending: sqrt(max(eig, 0)) of the smaller Gram.
inline Eigen::VectorXd singular_values(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  if (A.rows() > A.cols()) {
    const Eigen::MatrixXd wide = A.transpose();
    return gram_eigs(wide, false).values.cwiseMax(0.0).cwiseSqrt();
  }
  return gram_eigs(A, false).values.cwiseMax(0.0).cwiseSqrt();
}

inline double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  return singular_values(A)(0);
}

// Observed eigenvalue shift of A -> A+B next to its Weyl bound ||B||_2.
struct WeylGap {
  double max_shift;
  double bound;
};

inline WeylGap weyl_gap(const Eigen::Ref<const Eigen::MatrixXd>& A,
                        const Eigen::Ref<const Eigen::MatrixXd>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("weyl_gap: shape mismatch");
  const Eigen::VectorXd base = eigh_sym(A, false).values;
  const Eigen::VectorXd shifted = eigh_sym(A + B, false).values;
  return {(shifted - base).cwiseAbs().maxCoeff(), spectral_norm(B)};
}

}  // namespace heavytail
