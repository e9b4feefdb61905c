#include <cstdint>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "heavytail/harness.hpp"

namespace {

struct CommonOpts {
  std::string dist = "paper:alpha=1.6";
  double alpha = 0.0;  // 0 means "not given", --dist is used instead
  double beta = 1.0;
  double ell = 0.2;
  long n = 1000;
  long reps = 100;
  std::uint64_t seed = 0xC0FFEE;
  std::string out;
  std::string format = "csv";
  std::string centering;
  int threads = 0;
  long bins = 30;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_centering = true) {
  auto* dist_opt = cmd->add_option("--dist", o.dist,
                                   "entry distribution, e.g. paper:alpha=1.6, "
                                   "pareto:alpha=0.8,xmin=1, pareto2:alpha=1.6,pplus=0.5,xmin=1");
  auto* alpha_opt = cmd->add_option("--alpha", o.alpha,
                                    "tail index shorthand for the symmetric bounded-density model");
  dist_opt->excludes(alpha_opt);
  alpha_opt->excludes(dist_opt);
  cmd->add_option("--beta", o.beta, "dimension growth exponent, p ~ ell*n^beta");
  cmd->add_option("--ell", o.ell, "dimension growth prefactor");
  cmd->add_option("--n", o.n, "sample size (columns)");
  cmd->add_option("--reps", o.reps, "number of independent replications");
  cmd->add_option("--seed", o.seed, "master seed; replication r uses substream r");
  cmd->add_option("--out", o.out, "output file path")->required();
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware default)");
  cmd->add_option("--bins", o.bins, "histogram bins in the summary");
  if (with_centering)
    cmd->add_option("--centering", o.centering, "top-eigenvalue centering")
        ->check(CLI::IsMember({"none", "n", "maxnp"}));
}

heavytail::ExperimentSpec to_spec(const CommonOpts& o, heavytail::ExperimentKind kind) {
  heavytail::ExperimentSpec s;
  s.kind = kind;
  s.dist = o.alpha > 0.0 ? heavytail::TailModel::paper_density(o.alpha)
                         : heavytail::parse_tail_model(o.dist);
  s.growth = heavytail::GrowthRule{o.beta, o.ell};
  s.n = o.n;
  s.replications = o.reps;
  s.seed = o.seed;
  s.hist_bins = o.bins;
  s.threads = o.threads;
  if (o.centering == "none") s.centering = heavytail::Centering::none;
  else if (o.centering == "n") s.centering = heavytail::Centering::n_second_moment;
  else if (o.centering == "maxnp") s.centering = heavytail::Centering::maxnp_second_moment;
  return s;
}

void execute(const heavytail::ExperimentSpec& spec, const CommonOpts& o) {
  heavytail::RunResult result = heavytail::run(spec);
  if (o.format == "json")
    heavytail::write_summary_json(result, o.out);
  else
    heavytail::write_records_csv(result, o.out);
  std::cout << heavytail::experiment_name(spec.kind) << ": n=" << spec.n
            << " p=" << result.dimension << " reps=" << spec.replications
            << " -> " << o.out << '\n';
  for (const auto& [key, value] : result.scalars)
    std::cout << "  " << key << " = " << value << '\n';
  for (const auto& note : result.notes) std::cout << "  note: " << note << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation experiments for heavy-tailed sample covariance spectra"};
  app.set_config("--config", "", "read options from a key=value file (flags override)");
  app.require_subcommand(1);

  CommonOpts frechet_o, approx_o, eigvec_o, pointproc_o, autocov_o, ldp_o;
  long eigvec_k = 1, pointproc_k = 1, autocov_k = 1, max_lag = 1;
  long series_truncation = 10000;
  bool limit_mode = false;
  std::string ldp_check = "nagaev";
  double x_mult = 5.0, epsilon = 0.3, delta = 0.95, gamma_exp = 1.0;
  long rows_p = 1, order_k = 1;
  bool squared_entries = false;

  auto* frechet = app.add_subcommand(
      "frechet", "scaled largest eigenvalue across replications");
  frechet->configurable();
  add_common(frechet, frechet_o);

  auto* approx = app.add_subcommand(
      "approx", "spectrum vs row/column sums and order statistics");
  approx->configurable();
  add_common(approx, approx_o, false);

  auto* eigvec = app.add_subcommand(
      "eigvec", "localization of the leading eigenvectors");
  eigvec->configurable();
  add_common(eigvec, eigvec_o, false);
  eigvec->add_option("--k", eigvec_k, "how many leading eigenvectors");

  auto* pointproc = app.add_subcommand(
      "pointproc", "top eigenvalues, spacings and the trace ratio");
  pointproc->configurable();
  add_common(pointproc, pointproc_o);
  pointproc->add_option("--k", pointproc_k, "how many top eigenvalues");
  pointproc->add_flag("--limit", limit_mode,
                      "emit limit-law reference draws instead of matrix samples");
  pointproc->add_option("--truncation", series_truncation,
                        "series length for limit-mode draws");

  auto* autocov = app.add_subcommand(
      "autocov", "singular values of lagged autocovariance matrices");
  autocov->configurable();
  add_common(autocov, autocov_o, false);
  autocov->add_option("--k", autocov_k, "top singular values per lag");
  autocov->add_option("--maxlag", max_lag, "largest time lag");

  auto* ldp = app.add_subcommand(
      "ldp", "large-deviation checks for row sums and entry events");
  ldp->configurable();
  add_common(ldp, ldp_o, false);
  ldp->add_option("--check", ldp_check, "which check to run")
      ->check(CLI::IsMember({"nagaev", "karamata", "kthorder", "tworows", "bigjump"}));
  ldp->add_option("--xmult", x_mult, "threshold as a multiple of the norming constant");
  ldp->add_option("--epsilon", epsilon, "threshold exponent tilt");
  ldp->add_option("--delta", delta, "threshold exponent for the two-entries event");
  ldp->add_option("--gamma", gamma_exp, "moment exponent for the truncated sum ratio");
  ldp->add_option("--p", rows_p, "number of rows");
  ldp->add_option("--k", order_k, "order statistic rank");
  ldp->add_flag("--squared", squared_entries, "apply the check to squared entries");

  try {
    app.parse(argc, argv);
    if (frechet->parsed())
      execute(to_spec(frechet_o, heavytail::ExperimentKind::frechet), frechet_o);
    if (approx->parsed())
      execute(to_spec(approx_o, heavytail::ExperimentKind::approx), approx_o);
    if (eigvec->parsed()) {
      auto spec = to_spec(eigvec_o, heavytail::ExperimentKind::eigvec);
      spec.k_top = eigvec_k;
      execute(spec, eigvec_o);
    }
    if (pointproc->parsed()) {
      auto spec = to_spec(pointproc_o, heavytail::ExperimentKind::pointproc);
      spec.k_top = pointproc_k;
      spec.limit_mode = limit_mode;
      spec.series_truncation = series_truncation;
      execute(spec, pointproc_o);
    }
    if (autocov->parsed()) {
      auto spec = to_spec(autocov_o, heavytail::ExperimentKind::autocov);
      spec.k_top = autocov_k;
      spec.max_lag = max_lag;
      execute(spec, autocov_o);
    }
    if (ldp->parsed()) {
      auto spec = to_spec(ldp_o, heavytail::ExperimentKind::ldp);
      spec.kind = heavytail::ExperimentKind::ldp;
      if (ldp_check == "nagaev") spec.check = heavytail::LdpCheck::nagaev;
      else if (ldp_check == "karamata") spec.check = heavytail::LdpCheck::karamata;
      else if (ldp_check == "kthorder") spec.check = heavytail::LdpCheck::kthorder;
      else if (ldp_check == "tworows") spec.check = heavytail::LdpCheck::tworows;
      else spec.check = heavytail::LdpCheck::bigjump;
      spec.x_mult = x_mult;
      spec.epsilon = epsilon;
      spec.delta = delta;
      spec.gamma_exp = gamma_exp;
      spec.rows_p = rows_p;
      spec.order_k = order_k;
      spec.squared_entries = squared_entries;
      execute(spec, ldp_o);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::logic_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
