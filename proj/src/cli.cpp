#include "tailmix/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailmix/errors.hpp"
#include "tailmix/estimators.hpp"
#include "tailmix/experiments.hpp"
#include "tailmix/io.hpp"
#include "tailmix/mcmc.hpp"
#include "tailmix/parmix.hpp"

namespace tailmix {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

struct Common {
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed (root seed for experiments)");
  cmd->add_option("--config", c.config, "Path to a JSON config file");
  cmd->add_option("--out", c.out, "Output file or directory");
  cmd->add_option("--threads", c.threads, "Worker threads for experiment cells");
}

ParmixHyper hyper_from_flags(std::uint64_t n, const std::string& h_prior, double mass,
                             double kappa, double tau_jump, double mfm_mean,
                             double dirichlet_a) {
  ParmixHyper hyper;
  hyper.sched = default_schedule(n);
  if (h_prior == "mfm") {
    hyper.h_prior = MfmPrior{mfm_mean, dirichlet_a};
  } else if (h_prior == "dp") {
    hyper.h_prior = NrmPrior{LevySpec{mass, 0.0, 1.0}};
  } else if (h_prior == "nggp") {
    hyper.h_prior = NrmPrior{LevySpec{mass, kappa, tau_jump}};
  } else {
    throw CLI::ValidationError("--h-prior", "must be one of mfm, dp, nggp");
  }
  return hyper;
}

ordered_json mixture_json(const ParetoMixture& mix) {
  ordered_json atoms = ordered_json::array();
  for (const Component& c : mix.atoms())
    atoms.push_back({{"weight", c.weight}, {"exponent", c.exponent}});
  return ordered_json{{"leading_weight", mix.leading_weight()},
                      {"leading_exponent", mix.leading_exponent()},
                      {"atoms", std::move(atoms)}};
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
  out << j.dump(2) << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Tail-index machinery for Pareto mixture priors"};
  app.require_subcommand(1);

  // schedule
  auto* sched_cmd = app.add_subcommand("schedule", "Print the support schedule for a sample size");
  std::uint64_t sched_n = 0;
  sched_cmd->add_option("--n", sched_n, "Sample size")->required();
  Common sched_common;
  add_common(sched_cmd, sched_common);

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "Tail-index estimate from a dataset file");
  std::string est_input, est_method = "ck";
  double est_s = 0.0;
  bool est_n_auto = false;
  std::size_t est_k = 0;
  std::optional<double> est_alpha0;
  double est_eps = 1.0;
  est_cmd->add_option("--input", est_input, "Dataset file, one value per line")->required();
  est_cmd->add_option("--method", est_method, "ck or hill")
      ->check(CLI::IsMember({"ck", "hill"}));
  est_cmd->add_option("--s", est_s, "Threshold exponent for ck (thresholds e^s, e^(s+1))");
  est_cmd->add_flag("--n-auto", est_n_auto, "Take s from the default schedule at the data size");
  est_cmd->add_option("--k", est_k, "Order-statistic count for hill (default: top 1%)");
  est_cmd->add_option("--alpha0", est_alpha0, "Also run the uniform test against this index");
  est_cmd->add_option("--eps", est_eps, "Uniform test width (rejects at half this)");
  Common est_common;
  add_common(est_cmd, est_common);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw a dataset from a Pareto mixture");
  double smp_w1 = 1.0, smp_a1 = 1.0;
  std::vector<std::string> smp_atoms;
  std::uint64_t smp_n = 1000;
  sample_cmd->add_option("--leading-weight", smp_w1, "Leading component weight");
  sample_cmd->add_option("--leading-exponent", smp_a1, "Leading component exponent")
      ->required();
  sample_cmd->add_option("--atom", smp_atoms,
                         "Secondary atom as weight:exponent (repeatable)");
  sample_cmd->add_option("--n", smp_n, "Number of draws");
  Common smp_common;
  add_common(sample_cmd, smp_common);

  // prior-draw
  auto* prior_cmd = app.add_subcommand("prior-draw", "Draw a mixture from the parmix prior");
  std::uint64_t pr_n = 100000;
  std::size_t pr_atoms = 8;
  std::string pr_h_prior = "mfm";
  double pr_mass = 1.0, pr_kappa = 0.5, pr_tau_jump = 1.0, pr_mfm_mean = 3.0,
         pr_dirichlet_a = 1.0;
  prior_cmd->add_option("--n", pr_n, "Sample size the schedule is built for");
  prior_cmd->add_option("--atoms", pr_atoms, "Secondary truncation level (NRM branch)");
  prior_cmd->add_option("--h-prior", pr_h_prior, "Secondary prior: mfm, dp or nggp");
  prior_cmd->add_option("--mass", pr_mass, "Total mass a of the intensity");
  prior_cmd->add_option("--kappa", pr_kappa, "Stable index (nggp)");
  prior_cmd->add_option("--tau-jump", pr_tau_jump, "Exponential tilt (nggp)");
  prior_cmd->add_option("--mfm-mean-extra", pr_mfm_mean, "Mean extra atom count (mfm)");
  prior_cmd->add_option("--dirichlet-a", pr_dirichlet_a, "Dirichlet concentration (mfm)");
  Common pr_common;
  add_common(prior_cmd, pr_common);

  // mcmc
  auto* mcmc_cmd = app.add_subcommand("mcmc", "Posterior sampler on a dataset file");
  std::string mc_input, mc_stem = "chain";
  McmcConfig mc_cfg;
  std::string mc_h_prior = "mfm";
  double mc_mass = 1.0, mc_kappa = 0.5, mc_tau_jump = 1.0, mc_mfm_mean = 3.0,
         mc_dirichlet_a = 1.0;
  mcmc_cmd->add_option("--input", mc_input, "Dataset file, one value per line")->required();
  mcmc_cmd->add_option("--n-iter", mc_cfg.n_iter, "Total sweeps");
  mcmc_cmd->add_option("--burn-in", mc_cfg.burn_in, "Discarded initial sweeps");
  mcmc_cmd->add_option("--thin", mc_cfg.thin, "Keep every thin-th state");
  mcmc_cmd->add_option("--truncation", mc_cfg.truncation,
                       "Secondary component count (0 = pure leading restriction)");
  mcmc_cmd->add_option("--leading-step", mc_cfg.leading_step, "Leading random-walk sd");
  mcmc_cmd->add_option("--secondary-step", mc_cfg.secondary_step,
                       "Secondary random-walk sd");
  mcmc_cmd->add_option("--stem", mc_stem, "Output file stem");
  mcmc_cmd->add_option("--h-prior", mc_h_prior, "Secondary prior: mfm, dp or nggp");
  mcmc_cmd->add_option("--mass", mc_mass, "Total mass a of the intensity");
  mcmc_cmd->add_option("--kappa", mc_kappa, "Stable index (nggp)");
  mcmc_cmd->add_option("--tau-jump", mc_tau_jump, "Exponential tilt (nggp)");
  mcmc_cmd->add_option("--mfm-mean-extra", mc_mfm_mean, "Mean extra atom count (mfm)");
  mcmc_cmd->add_option("--dirichlet-a", mc_dirichlet_a, "Dirichlet concentration (mfm)");
  Common mc_common;
  add_common(mcmc_cmd, mc_common);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment from a JSON config");
  Common exp_common;
  add_common(exp_cmd, exp_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return kConfigError;
  }

  try {
    if (*sched_cmd) {
      std::vector<std::string> warnings;
      const Schedule s = default_schedule(sched_n, &warnings);
      ordered_json j{{"n", s.n},       {"alpha_bar", s.alpha_bar}, {"tau", s.tau},
                     {"w_low", s.w_low}, {"s", s.s},               {"envelope_B", s.envelope_B}};
      j["ordering_warnings"] = warnings;
      emit(j, sched_common.out);
      return kOk;
    }

    if (*est_cmd) {
      const std::vector<double> data = read_dataset(est_input);
      if (data.empty()) throw std::invalid_argument("estimate: dataset is empty");
      ordered_json j;
      j["input"] = est_input;
      j["n"] = data.size();
      j["method"] = est_method;
      if (est_method == "hill") {
        const std::size_t k = est_k > 0 ? est_k : std::max<std::size_t>(10, data.size() / 100);
        j["k"] = k;
        j["alpha_hat"] = hill(data, k);
        j["defined"] = true;
      } else {
        double s = est_s;
        if (est_n_auto || !est_cmd->count("--s")) s = default_schedule(data.size()).s;
        ExceedanceCounts counts;
        const std::optional<double> est = carpentier_kim(data, s, &counts);
        j["s"] = s;
        j["count_at_s"] = counts.at_s;
        j["count_at_s_plus_1"] = counts.at_s_plus_1;
        j["defined"] = est.has_value();
        j["alpha_hat"] = est ? ordered_json(*est) : ordered_json(nullptr);
        if (est_alpha0) {
          const TestOutcome test =
              uniform_test(data, *est_alpha0, est_eps, default_schedule(data.size()));
          j["test"] = {{"alpha0", *est_alpha0},
                       {"eps", est_eps},
                       {"threshold", test.threshold},
                       {"reject", test.reject},
                       {"not_defined", test.not_defined}};
        }
      }
      emit(j, est_common.out);
      return kOk;
    }

    if (*sample_cmd) {
      std::vector<Component> atoms;
      for (const std::string& spec : smp_atoms) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("--atom expects weight:exponent, got " + spec);
        atoms.push_back(Component{std::stod(spec.substr(0, colon)),
                                  std::stod(spec.substr(colon + 1))});
      }
      const ParetoMixture mix(smp_w1, smp_a1, std::move(atoms));
      const std::vector<double> data = sample(mix, smp_n, smp_common.seed);
      if (smp_common.out.empty()) {
        for (double x : data) std::cout << format_double(x) << '\n';
      } else {
        write_dataset(smp_common.out, data);
      }
      return kOk;
    }

    if (*prior_cmd) {
      const ParmixHyper hyper = hyper_from_flags(pr_n, pr_h_prior, pr_mass, pr_kappa,
                                                 pr_tau_jump, pr_mfm_mean, pr_dirichlet_a);
      const ParetoMixture mix = parmix_prior_sample(hyper, pr_atoms, pr_common.seed);
      ordered_json j = mixture_json(mix);
      j["schedule"] = {{"n", hyper.sched.n},
                       {"alpha_bar", hyper.sched.alpha_bar},
                       {"tau", hyper.sched.tau},
                       {"w_low", hyper.sched.w_low}};
      emit(j, pr_common.out);
      return kOk;
    }

    if (*mcmc_cmd) {
      const std::vector<double> data = read_dataset(mc_input);
      const ParmixHyper hyper =
          hyper_from_flags(data.size(), mc_h_prior, mc_mass, mc_kappa, mc_tau_jump,
                           mc_mfm_mean, mc_dirichlet_a);
      mc_cfg.seed = mc_common.seed;
      const McmcChain chain = run_chain(data, hyper, mc_cfg);
      const std::string out_dir = mc_common.out.empty() ? "." : mc_common.out;
      write_chain(out_dir, mc_stem, chain);
      const std::vector<double> probs = {0.05, 0.5, 0.95};
      const PosteriorSummary summary = posterior_tail_summary(chain, probs, 0.0, 1.0);
      ordered_json j{{"kept_states", chain.alpha1.size()},
                     {"post_mean_alpha1", summary.mean},
                     {"post_sd_alpha1", summary.sd},
                     {"post_q05_alpha1", summary.quantiles[0]},
                     {"post_median_alpha1", summary.quantiles[1]},
                     {"post_q95_alpha1", summary.quantiles[2]},
                     {"acceptance",
                      {{"leading", chain.acceptance.leading},
                       {"secondary", chain.acceptance.secondary},
                       {"weight_fallback", chain.acceptance.weight_fallback}}},
                     {"chain_files",
                      {out_dir + "/" + mc_stem + ".tsv", out_dir + "/" + mc_stem + ".json"}}};
      std::cout << j.dump(2) << '\n';
      return kOk;
    }

    if (*exp_cmd) {
      if (exp_common.config.empty())
        throw std::invalid_argument("experiment: --config is required");
      RunOverrides overrides;
      if (exp_cmd->count("--seed")) overrides.seed = exp_common.seed;
      if (!exp_common.out.empty()) overrides.out_dir = exp_common.out;
      if (exp_cmd->count("--threads")) overrides.threads = exp_common.threads;
      const auto written = run_experiment_file(exp_common.config, overrides);
      ordered_json j;
      j["written"] = ordered_json::array();
      for (const auto& p : written) j["written"].push_back(p.string());
      std::cout << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const InitFailureError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const DivergentIntegralError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace tailmix
