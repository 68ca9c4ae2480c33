#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tailmix/classification.hpp"
#include "tailmix/io.hpp"
#include "tailmix/mcmc.hpp"
#include "tailmix/parmix.hpp"

namespace tailmix {

// Runs work(0..count-1) across the given number of worker threads. Cells must
// be independent and write only to their own slots; completion order does not
// touch output order, so results are identical at any thread count.
void parallel_cells(std::size_t count, int threads,
                    const std::function<void(std::size_t)>& work);

struct CalibrationConfig {
  std::string experiment_id = "estimator-calibration";
  std::uint64_t seed_root = 1;
  std::vector<double> alphas = {0.5, 1.0, 2.0, 5.0};
  std::uint64_t n = 100000;
  std::uint64_t replicates = 100;
  int threads = 1;
};

// Count-ratio estimates on pure Pareto data at the schedule threshold.
// Rows: statistic "alpha_hat_ck" per (alpha, replicate); undefined estimates
// carry defined = false.
std::vector<ResultRow> run_estimator_calibration(const CalibrationConfig& cfg);

// Base sampler shapes for the location-scale demo, paired with the regime
// declared for classification.
enum class DemoBase {
  NormalThin,       // standard normal, both tails thin
  ExponentialThin,  // rate-1 exponential
  LognormalThin,    // exp(0.3 Z); thin, and as a scale base it stays clear of 0
  SuperHeavyLogLog, // survival 1 / loglog(x) past e^e; draws clamped at DBL_MAX
};

struct SingletonDemoConfig {
  std::string experiment_id = "singleton-demo";
  std::uint64_t seed_root = 1;
  bool use_dp = false;  // false: finite mixture prior; true: stick-breaking DP
  double dp_mass = 1.0;
  double mfm_mean_extra_atoms = 3.0;
  DemoBase mu_base = DemoBase::NormalThin;
  DemoBase sigma_base = DemoBase::LognormalThin;
  double kernel_index = 3.0;  // Student-t degrees of freedom
  std::uint64_t draws = 50;
  std::uint64_t n = 100000;
  std::size_t nrm_atoms = 400;
  int threads = 1;
};

struct SingletonDemoResult {
  std::vector<ResultRow> rows;
  TailClassification predicted{TailIndex::zero(), Provenance::MomentTable, {}};
  // DP branch only: concentration case of each declared base regime
  std::optional<BaseCase> mu_base_case;
  std::optional<BaseCase> sigma_base_case;
};

// Draws location-scale mixtures from the prior, samples each, runs the tail
// estimators, and carries the moment-table prediction alongside. Rows per
// draw: alpha_hat_ck, alpha_hat_hill, overflow_count.
SingletonDemoResult run_singleton_demo(const SingletonDemoConfig& cfg);

struct ConsistencyConfig {
  std::string experiment_id = "parmix-consistency";
  std::uint64_t seed_root = 1;
  TruthSpec truth{0.5, 1.0, 2.0, {{0.5, 3.0}}};
  std::vector<std::uint64_t> sample_sizes = {500, 5000, 50000};
  std::uint64_t replicates = 10;
  std::vector<double> eps_list = {0.25, 0.5};
  double test_eps = 1.0;  // uniform_test half-width is test_eps / 2
  McmcConfig mcmc;        // seed field ignored; per-cell seeds are derived
  bool check_double_truncation = false;  // rerun each cell at 2K and record both
  int threads = 1;
};

struct ConsistencyResult {
  std::vector<ResultRow> rows;
  // aggregated per sample size for plot data: median posterior sd and median
  // neighborhood mass per eps
  std::vector<std::uint64_t> sample_sizes;
  std::vector<double> median_sd;
  std::vector<std::vector<double>> median_mass;  // [eps index][size index]
};

// Replicated posterior runs against a fixed truth over growing sample sizes.
// Rows per (n, replicate): post_mean_alpha1, post_sd_alpha1, post_median_alpha1,
// mass_eps_<eps>, test_reject, plus *_2k variants when requested.
ConsistencyResult run_consistency_experiment(const ConsistencyConfig& cfg);

struct KlChecklistConfig {
  std::string experiment_id = "kl-checklist";
  TruthSpec truth{0.5, 1.0, 1.0, {{0.5, 2.0}}};
  std::uint64_t schedule_n = 100000;
  std::vector<double> truncation_ladder = {5.0, 10.0, 20.0, 40.0};
  std::vector<double> box_radii = {0.2, 0.1, 0.05};
};

// Quantitative shadow of the approximation argument: KL at the truth itself,
// along the truncation-window family, and at the worst corner of shrinking
// (w1, alpha1) boxes. Rows: kl_self, kl_truncation_<a>, kl_box_<eta>.
std::vector<ResultRow> run_kl_checklist(const KlChecklistConfig& cfg);

// Parses an experiment config (JSON text file), applies any overrides, runs
// the experiment and writes results.csv plus any kind-specific artifacts
// under out_dir. Returns the paths written.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
};
std::vector<std::filesystem::path> run_experiment_file(const std::filesystem::path& config_path,
                                                       const RunOverrides& overrides);

}  // namespace tailmix
