#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "heavytail/parallel.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/rv_dist.hpp"

namespace heavytail {

// Rare-event frequency with its binomial standard error.
struct EventEstimate {
  double estimate;
  long reps;
  double std_err;
  double threshold_used;
};

// Ratio-type estimate; low_confidence marks fewer than 30 exceedances.
struct RatioEstimate {
  double ratio;
  long exceedances;
  bool low_confidence;
  double threshold_used;
};

namespace detail {

inline EventEstimate make_event(long hits, long reps, double threshold) {
  const double est = static_cast<double>(hits) / static_cast<double>(reps);
  return {est, reps, std::sqrt(est * (1.0 - est) / static_cast<double>(reps)), threshold};
}

// Sums of n draws, centered by the exact mean when it exists; one substream
// per replication keeps the result independent of the worker count.
inline std::vector<double> simulate_sums(const TailModel& m, long n, long reps,
                                         const Stream& rng, int threads) {
  if (n < 1 || reps < 1) throw std::invalid_argument("need n >= 1 and reps >= 1");
  const double shift = has_finite_mean(m) ? mean(m) : 0.0;
  std::vector<double> sums(static_cast<std::size_t>(reps));
  parallel_for(
      reps,
      [&](long r) {
        Stream s = rng.substream(static_cast<std::uint64_t>(r));
        double acc = 0.0;
        for (long t = 0; t < n; ++t) acc += sample(m, s) - shift;
        sums[static_cast<std::size_t>(r)] = acc;
      },
      threads);
  return sums;
}

}  // namespace detail

// P(Bin(n, q) >= k), summed in log space over the complement.
inline double binomial_tail_ge(long n, long k, double q) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  double below = 0.0;
  for (long r = 0; r < k; ++r) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
    below += std::exp(lc + r * std::log(q) + (n - r) * std::log1p(-q));
  }
  return std::max(0.0, 1.0 - below);
}

// Monte Carlo of P(S_n > x) / (n P(|Z| > x)); Nagaev limit p_plus. Draws are
// centered by the exact mean when E|Z| < inf.
inline RatioEstimate nagaev_ratio(const TailModel& m, long n, double x, long reps,
                                  const Stream& rng, int threads = 0) {
  if (!(x > 0.0)) throw std::invalid_argument("nagaev_ratio: x must be positive");
  const std::vector<double> sums = detail::simulate_sums(m, n, reps, rng, threads);
  long hits = 0;
  for (double s : sums) hits += s > x;
  const double denom = static_cast<double>(n) * tail_prob(m, x) * static_cast<double>(reps);
  return {static_cast<double>(hits) / denom, hits, hits < 30, x};
}

// Same sums evaluated against a whole threshold grid (common random numbers):
// estimates are exactly monotone nonincreasing in x.
inline std::vector<RatioEstimate> nagaev_ratio_grid(const TailModel& m, long n,
                                                    const std::vector<double>& xs, long reps,
                                                    const Stream& rng, int threads = 0) {
  for (double x : xs)
    if (!(x > 0.0)) throw std::invalid_argument("nagaev_ratio_grid: thresholds must be positive");
  const std::vector<double> sums = detail::simulate_sums(m, n, reps, rng, threads);
  std::vector<RatioEstimate> out;
  out.reserve(xs.size());
  for (double x : xs) {
    long hits = 0;
    for (double s : sums) hits += s > x;
    const double denom = static_cast<double>(n) * tail_prob(m, x) * static_cast<double>(reps);
    out.push_back({static_cast<double>(hits) / denom, hits, hits < 30, x});
  }
  return out;
}

// Monte Carlo of E[|S_n/x|^gamma 1{|S_n| > x}] / (n P(|Z| > x)); limit
// alpha/(alpha-gamma). Per-replication terms are reduced in index order so
// the float sum is reproducible.
inline RatioEstimate karamata_sum_ratio(const TailModel& m, long n, double gamma, double x,
                                        long reps, const Stream& rng, int threads = 0) {
  if (!(gamma >= 0.0) || !(gamma < m.alpha))
    throw std::invalid_argument("karamata_sum_ratio: need 0 <= gamma < alpha");
  if (!(x > 0.0)) throw std::invalid_argument("karamata_sum_ratio: x must be positive");
  const std::vector<double> sums = detail::simulate_sums(m, n, reps, rng, threads);
  double acc = 0.0;
  long exceed = 0;
  for (double s : sums) {
    const double w = std::abs(s) / x;
    if (w > 1.0) {
      acc += std::pow(w, gamma);
      ++exceed;
    }
  }
  const double denom = static_cast<double>(n) * tail_prob(m, x) * static_cast<double>(reps);
  return {acc / denom, exceed, exceed < 30, x};
}

// Frequency of {k-th largest |draw| of n > a_n^{1-eps}}.
inline EventEstimate kth_order_event(const TailModel& m, long n, double epsilon, long k,
                                     long reps, const Stream& rng, int threads = 0) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5))
    throw std::invalid_argument("kth_order_event: epsilon outside (0, 0.5)");
  if (k < 1 || k > n) throw std::invalid_argument("kth_order_event: k outside [1, n]");
  const double threshold = std::pow(norming_constant(m, static_cast<std::uint64_t>(n)),
                                    1.0 - epsilon);
  std::vector<unsigned char> hit(static_cast<std::size_t>(reps));
  parallel_for(
      reps,
      [&](long r) {
        Stream s = rng.substream(static_cast<std::uint64_t>(r));
        // count exceedances instead of materializing the order statistic
        long count = 0;
        for (long t = 0; t < n && count < k; ++t) count += std::abs(sample(m, s)) > threshold;
        hit[static_cast<std::size_t>(r)] = count >= k;
      },
      threads);
  const long hits = std::accumulate(hit.begin(), hit.end(), 0L);
  return detail::make_event(hits, reps, threshold);
}

// Exact law of the same event: the exceedance count is Bin(n, tail(a_n^{1-eps})).
inline double kth_order_oracle(const TailModel& m, long n, double epsilon, long k) {
  const double threshold = std::pow(norming_constant(m, static_cast<std::uint64_t>(n)),
                                    1.0 - epsilon);
  return binomial_tail_ge(n, k, tail_prob(m, threshold));
}

// Frequency of {some row of a p-by-n field holds >= 2 entries with
// Z^2 > a_np^{2 delta}}, an event whose probability vanishes in the
// large-dimension limit for delta > (2+beta)/(2(1+beta)).
inline EventEstimate two_large_entries(const TailModel& m, long n, long p, double delta,
                                       long reps, const Stream& rng, int threads = 0) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("two_large_entries: delta outside (0, 1)");
  if (n < 2 || p < 1) throw std::invalid_argument("two_large_entries: need n >= 2, p >= 1");
  const double a_np =
      norming_constant(m, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(p));
  const double threshold_sq = std::pow(a_np, 2.0 * delta);
  std::vector<unsigned char> hit(static_cast<std::size_t>(reps));
  parallel_for(
      reps,
      [&](long r) {
        Stream s = rng.substream(static_cast<std::uint64_t>(r));
        bool event = false;
        for (long i = 0; i < p && !event; ++i) {
          long count = 0;
          for (long t = 0; t < n && count < 2; ++t) {
            const double z = sample(m, s);
            count += z * z > threshold_sq;
          }
          event = count >= 2;
        }
        hit[static_cast<std::size_t>(r)] = event;
      },
      threads);
  const long hits = std::accumulate(hit.begin(), hit.end(), 0L);
  return detail::make_event(hits, reps, threshold_sq);
}

// Exact probability of the same event: per row the exceedance count is
// Bin(n, q) with q = tail(a_np^delta), so
// P = 1 - ((1-q)^{n-1} (1 + (n-1) q))^p.
inline double two_large_oracle(const TailModel& m, long n, long p, double delta) {
  const double a_np =
      norming_constant(m, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(p));
  const double q = tail_prob(m, std::pow(a_np, delta));
  const double log_row = (n - 1.0) * std::log1p(-q) + std::log1p((n - 1.0) * q);
  return -std::expm1(static_cast<double>(p) * log_row);
}

// Frequency of the union over p rows of {S_n - M_n > a_np^{1-eps}} (sum minus
// max per row). With squared_entries the rows hold Z^2 draws, modeled exactly
// by the squared tail model, and a_np is taken for that model.
inline EventEstimate sum_minus_max(const TailModel& m, long n, long p, double epsilon,
                                   long reps, const Stream& rng, bool squared_entries = false,
                                   int threads = 0) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("sum_minus_max: epsilon outside (0, 1)");
  if (n < 2 || p < 1) throw std::invalid_argument("sum_minus_max: need n >= 2, p >= 1");
  const TailModel model = squared_entries ? squared_model(m) : m;
  const double a_np =
      norming_constant(model, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(p));
  const double threshold = std::pow(a_np, 1.0 - epsilon);
  std::vector<unsigned char> hit(static_cast<std::size_t>(reps));
  parallel_for(
      reps,
      [&](long r) {
        Stream s = rng.substream(static_cast<std::uint64_t>(r));
        bool event = false;
        for (long i = 0; i < p && !event; ++i) {
          double sum = 0.0, max = -std::numeric_limits<double>::infinity();
          for (long t = 0; t < n; ++t) {
            const double z = sample(model, s);
            sum += z;
            max = std::max(max, z);
          }
          event = sum - max > threshold;
        }
        hit[static_cast<std::size_t>(r)] = event;
      },
      threads);
  const long hits = std::accumulate(hit.begin(), hit.end(), 0L);
  return detail::make_event(hits, reps, threshold);
}

// Exact p=1, n=2 case: S - M = min of the two draws, so
// P = P(Z > a_{2}^{1-eps})^2 via the signed upper tail.
inline double min_pair_oracle(const TailModel& m, double epsilon) {
  const double threshold = std::pow(norming_constant(m, 2), 1.0 - epsilon);
  const double upper = 1.0 - cdf(m, threshold);
  return upper * upper;
}

}  // namespace heavytail
