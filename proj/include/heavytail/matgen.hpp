#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "heavytail/rv_dist.hpp"

namespace heavytail {

// Dimension growth p = floor(ell * n^beta), clamped to at least 1.
struct GrowthRule {
  double beta;
  double ell;
};

inline long dimension_p(const GrowthRule& g, long n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(g.beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(g.ell > 0.0)) throw std::invalid_argument("ell must be > 0");
  const double p = std::floor(g.ell * std::pow(static_cast<double>(n), g.beta));
  if (p > 1e9) throw std::overflow_error("dimension p overflows sane matrix sizes");
  return p < 1.0 ? 1L : static_cast<long>(p);
}

struct EnsembleConfig {
  TailModel dist;
  GrowthRule growth;
  long n;
  std::uint64_t seed;
};

// A p-by-n data matrix with pad entries on all four sides so shifted reads
// Z(s,k)_{it} = Z_{i-s,t-k} stay inside the generated block for |s| <= row_pad,
// |k| <= col_pad. Entry (i,t) is a pure function of (seed, replication, i, t):
// overlapping views of the same field agree entrywise by construction.
class DataField {
 public:
  DataField(long p, long n, long row_pad, long col_pad, Eigen::MatrixXd values)
      : p_(p), n_(n), row_pad_(row_pad), col_pad_(col_pad), values_(std::move(values)) {}

  long rows() const { return p_; }
  long cols() const { return n_; }
  long row_pad() const { return row_pad_; }
  long col_pad() const { return col_pad_; }

  // Logical indices: i in [1-row_pad, p+row_pad], t in [1-col_pad, n+col_pad].
  double at(long i, long t) const {
    return values_(i - 1 + row_pad_, t - 1 + col_pad_);
  }

  // p-by-n view with entries Z_{i-s,t-k}; requires |s| <= row_pad, |k| <= col_pad.
  Eigen::Block<const Eigen::MatrixXd> shifted_view(long s, long k) const {
    if (std::labs(s) > row_pad_ || std::labs(k) > col_pad_)
      throw std::out_of_range("shift exceeds the generated padding");
    return values_.block(row_pad_ - s, col_pad_ - k, p_, n_);
  }

  Eigen::Block<const Eigen::MatrixXd> base() const { return shifted_view(0, 0); }

 private:
  long p_, n_, row_pad_, col_pad_;
  Eigen::MatrixXd values_;
};

namespace detail {

// (i,t) -> one 64-bit counter; logical indices fit comfortably in 32 bits.
inline std::uint64_t entry_counter(long i, long t) {
  const auto hi = static_cast<std::uint32_t>(static_cast<std::int32_t>(i));
  const auto lo = static_cast<std::uint32_t>(static_cast<std::int32_t>(t));
  return (static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo);
}

}  // namespace detail

inline DataField generate(const EnsembleConfig& cfg, long replication, long row_pad = 0,
                          long col_pad = 0) {
  if (cfg.n < 2) throw std::invalid_argument("ensemble needs n >= 2");
  if (row_pad < 0 || col_pad < 0) throw std::invalid_argument("pads must be >= 0");
  const long p = dimension_p(cfg.growth, cfg.n);
  const long rows = p + 2 * row_pad;
  const long cols = cfg.n + 2 * col_pad;
  if (static_cast<double>(rows) * static_cast<double>(cols) > 5e8)
    throw std::overflow_error("field entry count overflows sane memory limits");
  const Stream stream = Stream(cfg.seed).substream(static_cast<std::uint64_t>(replication));
  Eigen::MatrixXd values(rows, cols);
  for (long c = 0; c < cols; ++c) {
    const long t = c + 1 - col_pad;
    for (long r = 0; r < rows; ++r) {
      const long i = r + 1 - row_pad;
      values(r, c) = quantile(cfg.dist, stream.uniform_at(detail::entry_counter(i, t)));
    }
  }
  return DataField(p, cfg.n, row_pad, col_pad, std::move(values));
}

}  // namespace heavytail
