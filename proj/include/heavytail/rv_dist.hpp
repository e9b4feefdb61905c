#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "heavytail/rng.hpp"

namespace heavytail {

// Entry distributions with exact power-law tails, tail index alpha in (0,4).
//
//   paper_density     symmetric: density 1 on [-1/4, 1/4], alpha/(4|x|)^{alpha+1} outside
//   two_sided_pareto  |Z| ~ Pareto(alpha, x_min), sign + with prob p_plus
//   positive_pareto   Pareto(alpha, x_min) on [x_min, inf)
//
// The slowly varying factor is constant for all three, so the norming
// sequence a_k (P(|Z| > a_k) = 1/k) inverts in closed form.
enum class TailKind { paper_density, two_sided_pareto, positive_pareto };

struct TailModel {
  TailKind kind;
  double alpha;
  double p_plus;  // probability of the right tail
  double x_min;   // support edge of |Z| for the pareto kinds, 0 for paper_density

  static TailModel paper_density(double alpha) {
    check_alpha(alpha);
    return {TailKind::paper_density, alpha, 0.5, 0.0};
  }
  static TailModel two_sided_pareto(double alpha, double p_plus, double x_min) {
    check_alpha(alpha);
    if (p_plus < 0.0 || p_plus > 1.0) throw std::invalid_argument("p_plus outside [0,1]");
    if (!(x_min > 0.0)) throw std::invalid_argument("x_min must be positive");
    return {TailKind::two_sided_pareto, alpha, p_plus, x_min};
  }
  static TailModel positive_pareto(double alpha, double x_min) {
    check_alpha(alpha);
    if (!(x_min > 0.0)) throw std::invalid_argument("x_min must be positive");
    return {TailKind::positive_pareto, alpha, 1.0, x_min};
  }

 private:
  static void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 4.0)) throw std::invalid_argument("alpha must lie in (0,4)");
  }
};

// P(|Z| > x); equals 1 below the support edge.
inline double tail_prob(const TailModel& m, double x) {
  switch (m.kind) {
    case TailKind::paper_density:
      if (x <= 0.0) return 1.0;
      if (x <= 0.25) return 1.0 - 2.0 * x;
      return 0.5 * std::pow(4.0 * x, -m.alpha);
    default:
      if (x < m.x_min) return 1.0;
      return std::pow(x / m.x_min, -m.alpha);
  }
}

// CDF of Z itself (signed), used for goodness-of-fit against draws.
inline double cdf(const TailModel& m, double x) {
  switch (m.kind) {
    case TailKind::paper_density:
      if (x < -0.25) return 0.25 * std::pow(-4.0 * x, -m.alpha);
      if (x <= 0.25) return x + 0.5;
      return 1.0 - 0.25 * std::pow(4.0 * x, -m.alpha);
    case TailKind::two_sided_pareto: {
      const double p_minus = 1.0 - m.p_plus;
      if (x <= -m.x_min) return p_minus * std::pow(-x / m.x_min, -m.alpha);
      if (x < m.x_min) return p_minus;
      return 1.0 - m.p_plus * std::pow(x / m.x_min, -m.alpha);
    }
    case TailKind::positive_pareto:
      if (x < m.x_min) return 0.0;
      return 1.0 - std::pow(x / m.x_min, -m.alpha);
  }
  return 0.0;
}

// Inverse CDF on (0,1). Every sampler goes through this single path so that
// draws are a pure function of the uniform variate.
inline double quantile(const TailModel& m, double u) {
  if (!(u > 0.0) || !(u < 1.0)) throw std::domain_error("quantile needs u in (0,1)");
  switch (m.kind) {
    case TailKind::paper_density:
      if (u < 0.25) return -0.25 * std::pow(4.0 * u, -1.0 / m.alpha);
      if (u <= 0.75) return u - 0.5;
      return 0.25 * std::pow(4.0 * (1.0 - u), -1.0 / m.alpha);
    case TailKind::two_sided_pareto: {
      const double p_minus = 1.0 - m.p_plus;
      if (u < p_minus) return -m.x_min * std::pow(u / p_minus, -1.0 / m.alpha);
      return m.x_min * std::pow((1.0 - u) / m.p_plus, -1.0 / m.alpha);
    }
    case TailKind::positive_pareto:
      return m.x_min * std::pow(1.0 - u, -1.0 / m.alpha);
  }
  return 0.0;
}

inline double sample(const TailModel& m, Stream& rng) { return quantile(m, rng.uniform()); }

// a_k solving P(|Z| > a_k) = 1/k exactly (closed-form tail inversion).
inline double norming_constant(const TailModel& m, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("norming_constant needs k >= 1");
  const double kd = static_cast<double>(k);
  switch (m.kind) {
    case TailKind::paper_density:
      // Tail hits 1/k at the uniform part only for k < 2.
      if (k == 1) return 0.0;
      return std::pow(0.5 * kd, 1.0 / m.alpha) / 4.0;
    default:
      return m.x_min * std::pow(kd, 1.0 / m.alpha);
  }
}

// Generic tail inversion by bisection; cross-checks the closed forms.
// Bracket [support edge, edge-shifted k^{2/alpha}] per the tail decay rate.
inline double norming_constant_bisect(const TailModel& m, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("norming_constant needs k >= 1");
  const double target = 1.0 / static_cast<double>(k);
  double lo = m.kind == TailKind::paper_density ? 0.0 : m.x_min;
  if (tail_prob(m, lo) <= target) return lo;
  double hi = (lo > 0.0 ? lo : 1.0) * std::pow(static_cast<double>(k), 2.0 / m.alpha);
  while (tail_prob(m, hi) > target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_prob(m, mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

// E[|Z|^exponent 1{|Z| <= x}], closed form. x may be +inf only when the
// full moment converges (exponent < alpha).
inline double truncated_abs_moment(const TailModel& m, double exponent, double x) {
  if (!(exponent >= 0.0)) throw std::invalid_argument("exponent must be >= 0");
  if (x < 0.0) throw std::invalid_argument("truncation point must be >= 0");
  if (std::isinf(x) && exponent >= m.alpha)
    throw std::domain_error("moment diverges: x = inf with exponent >= alpha");
  const double a = m.alpha;
  const double g = exponent;
  // integral of t^{g-a-1} over [lo, x], with the g == a log branch
  const auto power_part = [&](double lo) {
    if (g == a) return std::log(x / lo);
    if (std::isinf(x)) return -std::pow(lo, g - a) / (g - a);
    return (std::pow(x, g - a) - std::pow(lo, g - a)) / (g - a);
  };
  switch (m.kind) {
    case TailKind::paper_density: {
      if (x <= 0.25) return 2.0 * std::pow(x, g + 1.0) / (g + 1.0);
      const double bulk = 2.0 * std::pow(0.25, g + 1.0) / (g + 1.0);
      const double tail_coef = 2.0 * a * std::pow(4.0, -(a + 1.0));
      return bulk + tail_coef * power_part(0.25);
    }
    default:
      if (x < m.x_min) return 0.0;
      return a * std::pow(m.x_min, a) * power_part(m.x_min);
  }
}

inline bool has_finite_second_moment(const TailModel& m) { return m.alpha > 2.0; }

// E[Z^2]; +inf marks alpha <= 2.
inline double second_moment(const TailModel& m) {
  if (!has_finite_second_moment(m)) return std::numeric_limits<double>::infinity();
  return truncated_abs_moment(m, 2.0, std::numeric_limits<double>::infinity());
}

inline bool has_finite_mean(const TailModel& m) { return m.alpha > 1.0; }

// E[Z]; exact, used for centering sums when the mean exists.
inline double mean(const TailModel& m) {
  if (!has_finite_mean(m)) throw std::domain_error("mean diverges for alpha <= 1");
  switch (m.kind) {
    case TailKind::paper_density:
      return 0.0;
    default:
      return (2.0 * m.p_plus - 1.0) * m.alpha * m.x_min / (m.alpha - 1.0);
  }
}

// Law of Z^2 within the same family. Exact only for the pareto kinds
// (|Z|^2 is again pareto); the paper-density bulk has no image in the enum.
inline TailModel squared_model(const TailModel& m) {
  if (m.kind == TailKind::paper_density)
    throw std::invalid_argument("squared paper-density law is not representable exactly");
  return TailModel::positive_pareto(m.alpha / 2.0, m.x_min * m.x_min);
}

namespace detail {

inline double parse_kv(const std::string& body, const std::string& key, double fallback,
                       bool required) {
  const std::string needle = key + "=";
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t end = body.find(',', pos);
    const std::string item = body.substr(pos, end == std::string::npos ? end : end - pos);
    if (item.rfind(needle, 0) == 0) {
      std::size_t used = 0;
      const std::string val = item.substr(needle.size());
      const double out = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument("bad value in distribution spec: " + item);
      return out;
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (required) throw std::invalid_argument("distribution spec missing key: " + key);
  return fallback;
}

}  // namespace detail

// Model strings: "paper:alpha=A", "pareto:alpha=A,xmin=X", "pareto2:alpha=A,pplus=P,xmin=X".
inline TailModel parse_tail_model(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("distribution spec needs kind:params");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  const double alpha = detail::parse_kv(body, "alpha", 0.0, true);
  if (kind == "paper") return TailModel::paper_density(alpha);
  if (kind == "pareto") return TailModel::positive_pareto(alpha, detail::parse_kv(body, "xmin", 1.0, false));
  if (kind == "pareto2")
    return TailModel::two_sided_pareto(alpha, detail::parse_kv(body, "pplus", 0.5, false),
                                       detail::parse_kv(body, "xmin", 1.0, false));
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

inline std::string to_string(const TailModel& m) {
  const auto num = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  switch (m.kind) {
    case TailKind::paper_density:
      return "paper:alpha=" + num(m.alpha);
    case TailKind::two_sided_pareto:
      return "pareto2:alpha=" + num(m.alpha) + ",pplus=" + num(m.p_plus) + ",xmin=" + num(m.x_min);
    case TailKind::positive_pareto:
      return "pareto:alpha=" + num(m.alpha) + ",xmin=" + num(m.x_min);
  }
  return "";
}

}  // namespace heavytail
