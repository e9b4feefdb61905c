#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heavytail/extremes.hpp"
#include "heavytail/matgen.hpp"
#include "heavytail/rv_dist.hpp"

namespace heavytail {

enum class ExperimentKind { frechet, approx, eigvec, pointproc, autocov, ldp };
enum class OutputFormat { csv, json };
enum class LdpCheck { nagaev, karamata, kthorder, tworows, bigjump };

// One experiment: kind, ensemble, replication budget, and output knobs.
// Everything downstream is a pure function of this record, so a spec run
// twice produces byte-identical files regardless of worker count.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::frechet;
  TailModel dist = TailModel::paper_density(1.6);
  GrowthRule growth{1.0, 0.2};
  long n = 1000;
  long replications = 100;
  long k_top = 1;
  long max_lag = 1;
  std::optional<Centering> centering;  // unset: rule-based default, may require a choice
  std::uint64_t seed = 0xC0FFEE;
  long hist_bins = 30;
  int threads = 0;
  bool limit_mode = false;  // pointproc: emit limit-law reference draws instead
  long series_truncation = 10000;

  // ldp check parameters
  LdpCheck check = LdpCheck::nagaev;
  double x_mult = 5.0;  // threshold as a multiple of a_n
  double epsilon = 0.3;
  double delta = 0.95;
  double gamma_exp = 1.0;
  long rows_p = 1;
  long order_k = 1;
  bool squared_entries = false;
};

// Per-replication numeric records; row r belongs to replication r.
struct RecordTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Equal-width histogram; the last bin is right-closed, counts sum to the
// sample size.
struct Histogram {
  std::vector<double> edges;
  std::vector<long> counts;
};

Histogram histogram(const std::vector<double>& values, long bins);

// Empirical CDF: fraction of the sample <= x.
double ecdf(const std::vector<double>& sample, double x);

struct StatSummary {
  std::string name;
  double mean;
  double std_err;
  double q05, q25, q50, q75, q95;
  Histogram hist;
  std::optional<double> ks_frechet;  // KS vs Phi_{alpha/2} for top-eigenvalue stats
};

struct RunResult {
  ExperimentSpec spec;
  long dimension = 0;  // p actually used
  RecordTable records;
  std::vector<StatSummary> summary;
  std::map<std::string, double> scalars;  // experiment-level values (thresholds, oracles, ...)
  std::vector<std::string> notes;
};

RunResult run(const ExperimentSpec& spec);

std::string experiment_name(ExperimentKind kind);
std::string git_revision();

// CSV with the fixed prefix (experiment, alpha, beta, n, p, seed, replication)
// before the per-kind columns; '.' decimal point, UTF-8, header row.
void write_records_csv(const RunResult& result, const std::string& path);

// Single JSON object with "spec", "summary", and "provenance" members.
void write_summary_json(const RunResult& result, const std::string& path);

}  // namespace heavytail
