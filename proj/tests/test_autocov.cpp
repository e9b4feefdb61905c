#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "heavytail/autocov.hpp"
#include "heavytail/diagnostics.hpp"
#include "heavytail/matgen.hpp"
#include "heavytail/spectra.hpp"

using namespace heavytail;

static DataField make_field(long n, double ell, long row_pad, long col_pad,
                            std::uint64_t seed) {
  EnsembleConfig cfg{TailModel::paper_density(1.6), GrowthRule{1.0, ell}, n, seed};
  return generate(cfg, 0, row_pad, col_pad);
}

TEST_CASE("lagged products match a direct entry loop") {
  DataField f = make_field(12, 0.25, 2, 2, 31);  // p = 3
  const long p = f.rows(), n = f.cols();
  for (long s : {-2L, -1L, 0L, 1L, 2L}) {
    for (long k : {-1L, 0L, 1L}) {
      Eigen::MatrixXd C = autocov_matrix(f, s, k);
      REQUIRE(C.rows() == p);
      REQUIRE(C.cols() == p);
      for (long i = 1; i <= p; ++i) {
        for (long j = 1; j <= p; ++j) {
          double want = 0.0;
          for (long t = 1; t <= n; ++t) want += f.at(i, t) * f.at(j - s, t - k);
          CHECK(C(i - 1, j - 1) == doctest::Approx(want).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("zero lag reproduces the Gram matrix") {
  DataField f = make_field(20, 0.2, 1, 1, 7);
  Eigen::MatrixXd C = autocov_matrix(f, 0, 0);
  Eigen::MatrixXd G = f.base() * f.base().transpose();
  CHECK((C - G).norm() == 0.0);
  CHECK_THROWS((void)autocov_matrix(f, 2, 0));  // outside the pad
}

TEST_CASE("zero-lag diagnostics coincide with the spectrum comparisons") {
  DataField f = make_field(30, 0.2, 1, 1, 13);
  const double a2 = 9.0;
  LagDiagnostics ld = lag_diagnostics(f, 0, 0, a2);
  Eigen::MatrixXd Z = f.base();
  Eigen::VectorXd spectrum = gram_eigs(Z, false).values;
  ApproxErrors e = approx_errors(Z, a2, spectrum);
  REQUIRE(ld.err_row.has_value());
  REQUIRE(ld.err_col.has_value());
  REQUIRE(ld.err_order.has_value());
  CHECK(*ld.err_row == doctest::Approx(e.err_row).epsilon(1e-10));
  CHECK(*ld.err_col == doctest::Approx(e.err_col).epsilon(1e-10));
  CHECK(*ld.err_order == doctest::Approx(e.err_order).epsilon(1e-10));
  CHECK(ld.top_norm == doctest::Approx(spectrum(0) / a2).epsilon(1e-10));
}

TEST_CASE("row-shift diagnostics use the truncated comparison ranges") {
  DataField f = make_field(24, 0.25, 2, 1, 19);  // p = 6
  const double a2 = 4.0;
  LagDiagnostics ld = lag_diagnostics(f, 2, 0, a2);
  REQUIRE(ld.err_row.has_value());
  // recompute: top p-2 singular values vs sorted row sums
  Eigen::VectorXd sv = singular_values(autocov_matrix(f, 2, 0));
  Eigen::VectorXd rows = row_sums(f.base());
  std::sort(rows.data(), rows.data() + rows.size(), std::greater<double>());
  double want = 0.0;
  for (long i = 0; i < f.rows() - 2; ++i) want = std::max(want, std::abs(sv(i) - rows(i)));
  CHECK(*ld.err_row == doctest::Approx(want / a2).epsilon(1e-10));
  CHECK(ld.top_norm == doctest::Approx(sv(0) / a2).epsilon(1e-12));
}

TEST_CASE("time-shift diagnostics only report the norm") {
  DataField f = make_field(18, 0.3, 1, 1, 3);
  LagDiagnostics ld = lag_diagnostics(f, 0, 1, 2.0);
  CHECK(ld.top_norm > 0.0);
  CHECK_FALSE(ld.err_row.has_value());
  CHECK_FALSE(ld.err_col.has_value());
  CHECK_FALSE(ld.err_order.has_value());
  CHECK_THROWS((void)lag_diagnostics(f, 0, 1, 0.0));
}

TEST_CASE("joint lag table stacks scaled singular values per shift") {
  DataField f = make_field(25, 0.2, 2, 0, 23);  // p = 5
  const double a2 = 3.0;
  Eigen::MatrixXd pts = joint_lag_points(f, 2, a2, 3);
  REQUIRE(pts.rows() == 3);
  REQUIRE(pts.cols() == 3);
  for (long s = 0; s <= 2; ++s) {
    Eigen::VectorXd sv = singular_values(autocov_matrix(f, s, 0));
    for (long k = 0; k < 3; ++k)
      CHECK(pts(k, s) == doctest::Approx(sv(k) / a2).epsilon(1e-12));
    // columns are descending in k
    CHECK(pts(0, s) >= pts(1, s));
    CHECK(pts(1, s) >= pts(2, s));
  }
  // zero shift, top entry: the Gram top eigenvalue
  double lam1 = gram_eigs(f.base(), false).values(0);
  CHECK(pts(0, 0) == doctest::Approx(lam1 / a2).epsilon(1e-10));
  // scale out: doubling a2 halves every point
  Eigen::MatrixXd half = joint_lag_points(f, 2, 2.0 * a2, 3);
  CHECK((pts - 2.0 * half).norm() < 1e-12 * pts.norm());
  CHECK_THROWS((void)joint_lag_points(f, 3, a2, 3));  // pad too small
  CHECK_THROWS((void)joint_lag_points(f, 1, a2, 99));
}
