#include "heavytail/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "heavytail/autocov.hpp"
#include "heavytail/diagnostics.hpp"
#include "heavytail/ldp.hpp"
#include "heavytail/parallel.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/spectra.hpp"

namespace heavytail {

namespace {

// Shortest round-trip decimal form; locale-independent so reruns are
// byte-identical.
std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<double> finite_only(const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values)
    if (std::isfinite(v)) out.push_back(v);
  return out;
}

// Linear-interpolation quantile of an ascending sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (sorted.size() == 1) return sorted[0];
  double h = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::string centering_name(Centering mode) {
  switch (mode) {
    case Centering::none: return "none";
    case Centering::n_second_moment: return "n_second_moment";
    case Centering::maxnp_second_moment: return "maxnp_second_moment";
  }
  return "none";
}

std::string ldp_check_name(LdpCheck check) {
  switch (check) {
    case LdpCheck::nagaev: return "nagaev";
    case LdpCheck::karamata: return "karamata";
    case LdpCheck::kthorder: return "kthorder";
    case LdpCheck::tworows: return "tworows";
    case LdpCheck::bigjump: return "bigjump";
  }
  return "nagaev";
}

// Centering default: no centering when the second moment is infinite, or when
// the diagonal drift max(n,p)*E[Z^2] is below 5% of the spectral scale.
// Otherwise the drift matters and the caller must pick a mode explicitly.
Centering resolve_centering(const ExperimentSpec& spec, long p, double a_np_sq) {
  if (spec.centering) {
    if (*spec.centering != Centering::none && !has_finite_second_moment(spec.dist))
      throw std::invalid_argument(
          "second-moment centering requires a distribution with a finite second moment");
    return *spec.centering;
  }
  if (!has_finite_second_moment(spec.dist)) return Centering::none;
  double drift = static_cast<double>(std::max(spec.n, p)) * second_moment(spec.dist);
  if (drift < 0.05 * a_np_sq) return Centering::none;
  throw std::invalid_argument(
      "centering mode is ambiguous for this ensemble (diagonal drift is not negligible); "
      "pass an explicit centering choice");
}

StatSummary summarize(const std::string& name, const std::vector<double>& raw, long bins,
                      std::optional<double> frechet_shape) {
  StatSummary s;
  s.name = name;
  std::vector<double> values = finite_only(raw);
  const auto m = static_cast<double>(values.size());
  if (values.empty()) {
    s.mean = s.std_err = s.q05 = s.q25 = s.q50 = s.q75 = s.q95 =
        std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= m;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var = values.size() > 1 ? var / (m - 1.0) : 0.0;
  s.mean = mean;
  s.std_err = std::sqrt(var / m);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  s.q05 = quantile_sorted(sorted, 0.05);
  s.q25 = quantile_sorted(sorted, 0.25);
  s.q50 = quantile_sorted(sorted, 0.50);
  s.q75 = quantile_sorted(sorted, 0.75);
  s.q95 = quantile_sorted(sorted, 0.95);
  s.hist = histogram(values, bins);
  if (frechet_shape && values.size() > 1) {
    FrechetLaw law{*frechet_shape};
    Eigen::VectorXd sorted_vec =
        Eigen::Map<const Eigen::VectorXd>(sorted.data(), static_cast<long>(sorted.size()));
    s.ks_frechet = ks_statistic(sorted_vec, [&](double x) { return frechet_cdf(law, x); });
  }
  return s;
}

struct Layout {
  std::vector<std::string> columns;
  long p = 0;
};

void run_frechet(const ExperimentSpec& spec, RunResult& out) {
  const long p = dimension_p(spec.growth, spec.n);
  const double a_np = norming_constant(spec.dist,
                                       static_cast<std::uint64_t>(spec.n) * static_cast<std::uint64_t>(p));
  const double a2 = a_np * a_np;
  const Centering mode = resolve_centering(spec, p, a2);
  const double shift = centering_value(spec.dist, spec.n, p, mode);
  out.dimension = p;
  out.records.columns = {"lambda1_scaled"};
  out.records.rows.assign(static_cast<std::size_t>(spec.replications), {});
  EnsembleConfig cfg{spec.dist, spec.growth, spec.n, spec.seed};
  parallel_for(spec.replications, [&](long r) {
    DataField field = generate(cfg, static_cast<std::uint64_t>(r));
    SpectralResult sr = gram_eigs(field.base(), false);
    out.records.rows[static_cast<std::size_t>(r)] = {(sr.values(0) - shift) / a2};
  }, spec.threads);
  out.scalars["a_np_sq"] = a2;
  out.scalars["centering_shift"] = shift;
  out.notes.push_back("centering=" + centering_name(mode));
}

void run_approx(const ExperimentSpec& spec, RunResult& out) {
  const long p = dimension_p(spec.growth, spec.n);
  const double a_np = norming_constant(spec.dist,
                                       static_cast<std::uint64_t>(spec.n) * static_cast<std::uint64_t>(p));
  const double a2 = a_np * a_np;
  out.dimension = p;
  out.records.columns = {"err_row", "err_col", "err_order", "offdiag_ratio",
                         "top_row_gap", "top_order_gap"};
  out.records.rows.assign(static_cast<std::size_t>(spec.replications), {});
  EnsembleConfig cfg{spec.dist, spec.growth, spec.n, spec.seed};
  parallel_for(spec.replications, [&](long r) {
    DataField field = generate(cfg, static_cast<std::uint64_t>(r));
    Eigen::MatrixXd Z = field.base();
    SpectralResult sr = gram_eigs(Z, false);
    ApproxErrors e = approx_errors(Z, a2, sr.values);
    double top_row = row_sums(Z).maxCoeff();
    double top_order = squared_order_stats(Z, 1)(0);
    out.records.rows[static_cast<std::size_t>(r)] = {
        e.err_row, e.err_col, e.err_order, e.offdiag_ratio,
        (sr.values(0) - top_row) / a2, (sr.values(0) - top_order) / a2};
  }, spec.threads);
  out.scalars["a_np_sq"] = a2;
}

void run_eigvec(const ExperimentSpec& spec, RunResult& out) {
  const long p = dimension_p(spec.growth, spec.n);
  if (spec.k_top > std::min(p, spec.n))
    throw std::invalid_argument("k_top exceeds the number of computable eigenvectors");
  out.dimension = p;
  for (long k = 1; k <= spec.k_top; ++k) {
    out.records.columns.push_back("row_index_" + std::to_string(k));
    out.records.columns.push_back("distance_" + std::to_string(k));
    out.records.columns.push_back("mass_top_" + std::to_string(k));
  }
  out.records.rows.assign(static_cast<std::size_t>(spec.replications), {});
  EnsembleConfig cfg{spec.dist, spec.growth, spec.n, spec.seed};
  parallel_for(spec.replications, [&](long r) {
    DataField field = generate(cfg, static_cast<std::uint64_t>(r));
    Eigen::MatrixXd Z = field.base();
    SpectralResult sr = gram_eigs(Z, true);
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(3 * spec.k_top));
    for (long k = 1; k <= spec.k_top; ++k) {
      LocalizationReport rep = localization(Z, sr, k);
      row.push_back(static_cast<double>(rep.row_index));
      row.push_back(rep.distance);
      row.push_back(rep.mass_top);
    }
    out.records.rows[static_cast<std::size_t>(r)] = std::move(row);
  }, spec.threads);
}

void run_pointproc(const ExperimentSpec& spec, RunResult& out) {
  const long p = dimension_p(spec.growth, spec.n);
  const double alpha = spec.dist.alpha;
  if (spec.limit_mode && spec.series_truncation < spec.k_top + 1)
    throw std::invalid_argument("series_truncation must exceed k_top");
  if (!spec.limit_mode && spec.k_top + 1 > p)
    throw std::invalid_argument("k_top+1 eigenvalues are needed for spacings");
  out.dimension = p;
  for (long k = 1; k <= spec.k_top; ++k)
    out.records.columns.push_back("top_" + std::to_string(k));
  for (long k = 1; k <= spec.k_top; ++k)
    out.records.columns.push_back("spacing_" + std::to_string(k));
  out.records.columns.push_back("trace_ratio");
  out.records.rows.assign(static_cast<std::size_t>(spec.replications), {});

  if (spec.limit_mode) {
    parallel_for(spec.replications, [&](long r) {
      Stream stream = Stream(spec.seed).substream(static_cast<std::uint64_t>(r));
      Eigen::VectorXd pts = gamma_points(spec.series_truncation, alpha, stream);
      std::vector<double> row;
      row.reserve(static_cast<std::size_t>(2 * spec.k_top + 1));
      for (long k = 0; k < spec.k_top; ++k) row.push_back(pts(k));
      for (long k = 0; k < spec.k_top; ++k) row.push_back(pts(k) - pts(k + 1));
      row.push_back(alpha < 2.0 ? pts(0) / pts.sum()
                                : std::numeric_limits<double>::quiet_NaN());
      out.records.rows[static_cast<std::size_t>(r)] = std::move(row);
    }, spec.threads);
    if (alpha < 2.0) {
      // truncated series tail: sum over i>m of Gamma_i^{-2/alpha},
      // approximately m^{1-2/alpha}/(2/alpha-1)
      double m = static_cast<double>(spec.series_truncation);
      double bound = std::pow(m, 1.0 - 2.0 / alpha) / (2.0 / alpha - 1.0);
      out.scalars["series_tail_bound"] = bound;
      out.notes.push_back("trace series truncated at " + std::to_string(spec.series_truncation) +
                          " terms, tail <~ " + fmt_double(bound));
    } else {
      out.notes.push_back("trace_ratio limit requires alpha<2, column left as nan");
    }
    return;
  }

  const double a_np = norming_constant(spec.dist,
                                       static_cast<std::uint64_t>(spec.n) * static_cast<std::uint64_t>(p));
  const double a2 = a_np * a_np;
  const Centering mode = resolve_centering(spec, p, a2);
  const double shift = centering_value(spec.dist, spec.n, p, mode);
  EnsembleConfig cfg{spec.dist, spec.growth, spec.n, spec.seed};
  parallel_for(spec.replications, [&](long r) {
    DataField field = generate(cfg, static_cast<std::uint64_t>(r));
    SpectralResult sr = gram_eigs(field.base(), false);
    Eigen::VectorXd tops = top_k(sr.values, a2, spec.k_top, shift);
    Eigen::VectorXd gaps = spacings(sr.values, a2, spec.k_top);
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(2 * spec.k_top + 1));
    for (long k = 0; k < spec.k_top; ++k) row.push_back(tops(k));
    for (long k = 0; k < spec.k_top; ++k) row.push_back(gaps(k));
    row.push_back(trace_ratio(sr.values));
    out.records.rows[static_cast<std::size_t>(r)] = std::move(row);
  }, spec.threads);
  out.scalars["a_np_sq"] = a2;
  out.scalars["centering_shift"] = shift;
  out.notes.push_back("centering=" + centering_name(mode));
}

void run_autocov(const ExperimentSpec& spec, RunResult& out) {
  const long p = dimension_p(spec.growth, spec.n);
  if (spec.max_lag < 0 || spec.max_lag >= spec.n)
    throw std::invalid_argument("max_lag must lie in [0, n)");
  if (spec.k_top > std::min(p, spec.n))
    throw std::invalid_argument("k_top exceeds the matrix rank bound");
  const double a_np = norming_constant(spec.dist,
                                       static_cast<std::uint64_t>(spec.n) * static_cast<std::uint64_t>(p));
  const double a2 = a_np * a_np;
  out.dimension = p;
  out.records.columns.push_back("top_norm_s0_k1");
  for (long s = 0; s <= spec.max_lag; ++s)
    for (long k = 1; k <= spec.k_top; ++k)
      out.records.columns.push_back("top" + std::to_string(k) + "_lag" + std::to_string(s));
  out.records.columns.push_back("row1_spread");
  out.records.rows.assign(static_cast<std::size_t>(spec.replications), {});
  EnsembleConfig cfg{spec.dist, spec.growth, spec.n, spec.seed};
  parallel_for(spec.replications, [&](long r) {
    DataField field = generate(cfg, static_cast<std::uint64_t>(r), spec.max_lag, 1);
    LagDiagnostics ld = lag_diagnostics(field, 0, 1, a2);
    Eigen::MatrixXd joint = joint_lag_points(field, spec.max_lag, a2, spec.k_top);
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(2 + (spec.max_lag + 1) * spec.k_top));
    row.push_back(ld.top_norm);
    for (long s = 0; s <= spec.max_lag; ++s)
      for (long k = 0; k < spec.k_top; ++k) row.push_back(joint(k, s));
    row.push_back(joint.row(0).maxCoeff() - joint.row(0).minCoeff());
    out.records.rows[static_cast<std::size_t>(r)] = std::move(row);
  }, spec.threads);
  out.scalars["a_np_sq"] = a2;
}

void run_ldp(const ExperimentSpec& spec, RunResult& out) {
  const long reps = spec.replications;
  Stream stream(spec.seed);
  switch (spec.check) {
    case LdpCheck::nagaev: {
      const double a_n = norming_constant(spec.dist, static_cast<std::uint64_t>(spec.n));
      const double x = spec.x_mult * a_n;
      RatioEstimate re = nagaev_ratio(spec.dist, spec.n, x, reps, stream, spec.threads);
      double target = spec.dist.p_plus;
      out.dimension = 1;
      out.records.columns = {"estimate", "target", "exceedances", "low_confidence", "threshold"};
      out.records.rows = {{re.ratio, target, static_cast<double>(re.exceedances),
                           re.low_confidence ? 1.0 : 0.0, re.threshold_used}};
      out.scalars["estimate"] = re.ratio;
      out.scalars["target"] = target;
      out.scalars["exceedances"] = static_cast<double>(re.exceedances);
      out.scalars["threshold"] = re.threshold_used;
      if (re.low_confidence)
        out.notes.push_back("fewer than 30 exceedances, estimate has low confidence");
      break;
    }
    case LdpCheck::karamata: {
      const double a_n = norming_constant(spec.dist, static_cast<std::uint64_t>(spec.n));
      const double x = spec.x_mult * a_n;
      RatioEstimate re = karamata_sum_ratio(spec.dist, spec.n, spec.gamma_exp, x, reps,
                                            stream, spec.threads);
      double target = spec.dist.alpha / (spec.dist.alpha - spec.gamma_exp);
      out.dimension = 1;
      out.records.columns = {"estimate", "target", "exceedances", "low_confidence", "threshold"};
      out.records.rows = {{re.ratio, target, static_cast<double>(re.exceedances),
                           re.low_confidence ? 1.0 : 0.0, re.threshold_used}};
      out.scalars["estimate"] = re.ratio;
      out.scalars["target"] = target;
      out.scalars["exceedances"] = static_cast<double>(re.exceedances);
      out.scalars["threshold"] = re.threshold_used;
      if (re.low_confidence)
        out.notes.push_back("fewer than 30 exceedances, estimate has low confidence");
      break;
    }
    case LdpCheck::kthorder: {
      EventEstimate est = kth_order_event(spec.dist, spec.n, spec.epsilon, spec.order_k,
                                          reps, stream, spec.threads);
      double oracle = kth_order_oracle(spec.dist, spec.n, spec.epsilon, spec.order_k);
      out.dimension = 1;
      out.records.columns = {"estimate", "std_err", "oracle", "threshold"};
      out.records.rows = {{est.estimate, est.std_err, oracle, est.threshold_used}};
      out.scalars["estimate"] = est.estimate;
      out.scalars["std_err"] = est.std_err;
      out.scalars["oracle"] = oracle;
      out.scalars["threshold"] = est.threshold_used;
      break;
    }
    case LdpCheck::tworows: {
      EventEstimate est = two_large_entries(spec.dist, spec.n, spec.rows_p, spec.delta,
                                            reps, stream, spec.threads);
      double oracle = two_large_oracle(spec.dist, spec.n, spec.rows_p, spec.delta);
      out.dimension = spec.rows_p;
      out.records.columns = {"estimate", "std_err", "oracle", "threshold"};
      out.records.rows = {{est.estimate, est.std_err, oracle, est.threshold_used}};
      out.scalars["estimate"] = est.estimate;
      out.scalars["std_err"] = est.std_err;
      out.scalars["oracle"] = oracle;
      out.scalars["threshold"] = est.threshold_used;
      break;
    }
    case LdpCheck::bigjump: {
      EventEstimate est = sum_minus_max(spec.dist, spec.n, spec.rows_p, spec.epsilon,
                                        reps, stream, spec.squared_entries, spec.threads);
      double oracle = std::numeric_limits<double>::quiet_NaN();
      if (spec.rows_p == 1 && spec.n == 2) {
        TailModel effective = spec.squared_entries ? squared_model(spec.dist) : spec.dist;
        oracle = min_pair_oracle(effective, spec.epsilon);
      }
      out.dimension = spec.rows_p;
      out.records.columns = {"estimate", "std_err", "oracle", "threshold"};
      out.records.rows = {{est.estimate, est.std_err, oracle, est.threshold_used}};
      out.scalars["estimate"] = est.estimate;
      out.scalars["std_err"] = est.std_err;
      out.scalars["oracle"] = oracle;
      out.scalars["threshold"] = est.threshold_used;
      break;
    }
  }
}

}  // namespace

Histogram histogram(const std::vector<double>& raw, long bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  std::vector<double> values = finite_only(raw);
  if (values.empty()) {
    h.edges = {0.0, 1.0};
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (long b = 1; b < bins; ++b) h.edges.push_back(1.0 + static_cast<double>(b));
    std::sort(h.edges.begin(), h.edges.end());
    return h;
  }
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (long b = 0; b <= bins; ++b)
    h.edges[static_cast<std::size_t>(b)] = lo + width * static_cast<double>(b);
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto idx = static_cast<long>(std::floor((v - lo) / width));
    if (idx < 0) idx = 0;
    if (idx >= bins) idx = bins - 1;  // last bin right-closed
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

double ecdf(const std::vector<double>& sample, double x) {
  if (sample.empty()) throw std::invalid_argument("ecdf of an empty sample");
  long count = 0;
  for (double v : sample)
    if (v <= x) ++count;
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::frechet: return "frechet";
    case ExperimentKind::approx: return "approx";
    case ExperimentKind::eigvec: return "eigvec";
    case ExperimentKind::pointproc: return "pointproc";
    case ExperimentKind::autocov: return "autocov";
    case ExperimentKind::ldp: return "ldp";
  }
  return "unknown";
}

std::string git_revision() {
#ifdef HEAVYTAIL_GIT_HASH
  return HEAVYTAIL_GIT_HASH;
#else
  return "unknown";
#endif
}

RunResult run(const ExperimentSpec& spec) {
  if (spec.replications < 1) throw std::invalid_argument("replications must be positive");
  if (spec.n < 2) throw std::invalid_argument("n must be at least 2");
  if (spec.k_top < 1) throw std::invalid_argument("k_top must be positive");
  if (spec.hist_bins < 1) throw std::invalid_argument("hist_bins must be positive");

  RunResult out;
  out.spec = spec;
  switch (spec.kind) {
    case ExperimentKind::frechet: run_frechet(spec, out); break;
    case ExperimentKind::approx: run_approx(spec, out); break;
    case ExperimentKind::eigvec: run_eigvec(spec, out); break;
    case ExperimentKind::pointproc: run_pointproc(spec, out); break;
    case ExperimentKind::autocov: run_autocov(spec, out); break;
    case ExperimentKind::ldp: run_ldp(spec, out); break;
  }

  // column-wise summaries; top-eigenvalue columns also get a KS distance
  // against the Frechet law with shape alpha/2
  const std::size_t ncols = out.records.columns.size();
  std::vector<std::vector<double>> col_values(ncols);
  for (auto& cv : col_values) cv.reserve(out.records.rows.size());
  for (const auto& row : out.records.rows)
    for (std::size_t c = 0; c < ncols && c < row.size(); ++c)
      col_values[c].push_back(row[c]);
  for (std::size_t c = 0; c < ncols; ++c) {
    const std::string& name = out.records.columns[c];
    std::optional<double> shape;
    if (name == "lambda1_scaled" || name == "top_1") shape = spec.dist.alpha / 2.0;
    out.summary.push_back(summarize(name, col_values[c], spec.hist_bins, shape));
  }
  return out;
}

void write_records_csv(const RunResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "experiment,alpha,beta,n,p,seed,replication";
  for (const auto& c : result.records.columns) out << ',' << c;
  out << '\n';
  const std::string name = experiment_name(result.spec.kind);
  const bool aggregate = result.spec.kind == ExperimentKind::ldp;
  for (std::size_t r = 0; r < result.records.rows.size(); ++r) {
    out << name << ',' << fmt_double(result.spec.dist.alpha) << ','
        << fmt_double(result.spec.growth.beta) << ',' << result.spec.n << ','
        << result.dimension << ',' << result.spec.seed << ','
        << (aggregate ? result.spec.replications : static_cast<long>(r));
    for (double v : result.records.rows[r]) out << ',' << fmt_double(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

void write_summary_json(const RunResult& result, const std::string& path) {
  using json = nlohmann::ordered_json;
  const ExperimentSpec& spec = result.spec;
  json doc;
  json jspec;
  jspec["experiment"] = experiment_name(spec.kind);
  jspec["dist"] = to_string(spec.dist);
  jspec["alpha"] = spec.dist.alpha;
  jspec["beta"] = spec.growth.beta;
  jspec["ell"] = spec.growth.ell;
  jspec["n"] = spec.n;
  jspec["p"] = result.dimension;
  jspec["replications"] = spec.replications;
  jspec["k_top"] = spec.k_top;
  jspec["seed"] = spec.seed;
  jspec["hist_bins"] = spec.hist_bins;
  if (spec.centering) jspec["centering"] = centering_name(*spec.centering);
  if (spec.kind == ExperimentKind::autocov) jspec["max_lag"] = spec.max_lag;
  if (spec.kind == ExperimentKind::pointproc) {
    jspec["limit_mode"] = spec.limit_mode;
    jspec["series_truncation"] = spec.series_truncation;
  }
  if (spec.kind == ExperimentKind::ldp) {
    jspec["check"] = ldp_check_name(spec.check);
    jspec["x_mult"] = spec.x_mult;
    jspec["epsilon"] = spec.epsilon;
    jspec["delta"] = spec.delta;
    jspec["gamma_exp"] = spec.gamma_exp;
    jspec["rows_p"] = spec.rows_p;
    jspec["order_k"] = spec.order_k;
    jspec["squared_entries"] = spec.squared_entries;
  }
  doc["spec"] = jspec;

  json jsummary;
  json jcols = json::object();
  for (const auto& s : result.summary) {
    json jc;
    jc["mean"] = s.mean;
    jc["std_err"] = s.std_err;
    jc["quantiles"] = {{"q05", s.q05}, {"q25", s.q25}, {"q50", s.q50},
                       {"q75", s.q75}, {"q95", s.q95}};
    jc["histogram"] = {{"edges", s.hist.edges}, {"counts", s.hist.counts}};
    if (s.ks_frechet) jc["ks_frechet"] = *s.ks_frechet;
    jcols[s.name] = jc;
  }
  jsummary["columns"] = jcols;
  if (!result.scalars.empty()) {
    json jsc = json::object();
    for (const auto& [k, v] : result.scalars) jsc[k] = v;
    jsummary["scalars"] = jsc;
  }
  if (!result.notes.empty()) jsummary["notes"] = result.notes;
  doc["summary"] = jsummary;

  json jprov;
  jprov["git_hash"] = git_revision();
  jprov["seed"] = spec.seed;
  jprov["records"] = result.records.rows.size();
  doc["provenance"] = jprov;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

}  // namespace heavytail
