// Acceptance gate: one line per criterion, nonzero exit if any fail.
// Every run is fully seeded; scales match the shipped experiment configs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailmix/classification.hpp"
#include "tailmix/estimators.hpp"
#include "tailmix/experiments.hpp"
#include "tailmix/levy.hpp"
#include "tailmix/mcmc.hpp"
#include "tailmix/pareto_mixture.hpp"
#include "tailmix/parmix.hpp"
#include "tailmix/rng.hpp"
#include "tailmix/schedule.hpp"

#include "support/oracles.hpp"

using namespace tailmix;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

// 1: count-ratio calibration on pure Pareto at the schedule threshold
void criterion_calibration() {
  CalibrationConfig cfg;  // alphas {0.5, 1, 2, 5}, n = 1e5, 100 replicates
  cfg.threads = 1;
  const auto rows = run_estimator_calibration(cfg);
  bool pass = true;
  std::string detail = "within 0.3 of truth:";
  std::size_t idx = 0;
  for (double alpha : cfg.alphas) {
    int hits = 0, defined = 0;
    for (std::uint64_t r = 0; r < cfg.replicates; ++r, ++idx) {
      if (!rows[idx].defined) continue;
      ++defined;
      if (std::fabs(rows[idx].value - alpha) <= 0.3) ++hits;
    }
    pass = pass && hits >= 95;
    detail += fmt(" alpha=%g %d/100 (defined %d)", alpha, hits, defined);
  }
  if (!pass)
    detail +=
        "; the alpha=5 leg cannot reach 95/100 at this scale: the upper-threshold "
        "exceedance count has expectation 8.4e-3, so the estimate is undefined in "
        "~99% of replicates";
  report(1, pass, detail);
}

// 2: Laplace exponent inverses and the intensity-quadrature cross-check
void criterion_laplace() {
  Rng rng(20260822);
  std::vector<LevySpec> specs;
  for (int i = 0; i < 10; ++i) specs.push_back({rng.uniform(0.3, 3.0), 0.0, 1.0});
  for (int i = 0; i < 10; ++i)
    specs.push_back({rng.uniform(0.3, 3.0), rng.uniform(0.1, 0.85), rng.uniform(0.2, 3.0)});

  double worst_rel = 0.0, worst_quad = 0.0;
  for (const LevySpec& spec : specs) {
    for (int e = -8; e <= 8; ++e) {
      const double s = std::pow(10.0, e);
      const double round = inverse_laplace_exponent(spec, laplace_exponent(spec, s));
      worst_rel = std::max(worst_rel, std::fabs(round - s) / s);
      const double preimage = inverse_laplace_exponent(spec, s);
      if (std::isfinite(preimage)) {
        const double forth = laplace_exponent(spec, preimage);
        worst_rel = std::max(worst_rel, std::fabs(forth - s) / s);
      }
    }
    for (int k = 0; k < 10; ++k) {
      const double s = std::pow(10.0, -2.0 + 4.0 * k / 9.0);
      const double closed = laplace_exponent(spec, s);
      const double quad =
          oracle::levy_laplace_quadrature(spec.a, spec.kappa, spec.tau, s, 1e-10);
      worst_quad = std::max(worst_quad, std::fabs(closed - quad));
    }
  }
  const bool pass = worst_rel <= 1e-10 && worst_quad <= 1e-6;
  report(2, pass,
         fmt("20 random intensity specs: worst round-trip rel err %.2e (<= 1e-10), "
             "worst quadrature gap %.2e (<= 1e-6)",
             worst_rel, worst_quad));
}

// 3: the four moment-table rows
void criterion_table() {
  const TailIndex zero = TailIndex::zero();
  const TailIndex inf = TailIndex::infinity();
  bool pass = true;
  const auto expect_zero = [&](TailIndex mu, TailIndex sigma, int row) {
    const auto c = classify_mixture_tail(mu, sigma, TailIndex::finite(2.5));
    pass = pass && c.index.is_zero() && c.table_case && *c.table_case == row &&
           c.provenance == Provenance::MomentTable;
  };
  expect_zero(zero, zero, 1);
  expect_zero(zero, inf, 2);
  expect_zero(inf, zero, 3);
  const auto through = classify_mixture_tail(inf, inf, TailIndex::finite(2.5));
  pass = pass && through.index.is_finite() && through.index.value() == 2.5 &&
         through.table_case && *through.table_case == 4;
  const auto through_inf = classify_mixture_tail(inf, inf, inf);
  pass = pass && through_inf.index.is_infinite();
  report(3, pass, "rows 1-3 collapse to index 0, row 4 passes the kernel index through");
}

// 4: location-scale demo concentrates near the kernel index
void criterion_demo() {
  SingletonDemoConfig cfg;  // 50 MFM draws, t(3) kernel, n = 1e5
  cfg.threads = 1;
  const auto res = run_singleton_demo(cfg);
  std::vector<double> hill, ck;
  std::size_t hill_undef = 0, ck_undef = 0;
  for (const auto& r : res.rows) {
    if (r.statistic == "alpha_hat_hill") {
      if (r.defined)
        hill.push_back(r.value);
      else
        ++hill_undef;
    }
    if (r.statistic == "alpha_hat_ck") {
      if (r.defined)
        ck.push_back(r.value);
      else
        ++ck_undef;
    }
  }
  const double lo = *std::min_element(hill.begin(), hill.end());
  const double hi = *std::max_element(hill.begin(), hill.end());
  const double sd = oracle::sd_of(hill);
  const bool pass = hill_undef == 0 && hill.size() == cfg.draws && sd < 0.5 &&
                    lo >= 2.0 && hi <= 4.0;
  std::string detail =
      fmt("order-statistic estimates over 50 draws: sd %.3f (< 0.5), range [%.2f, %.2f] "
          "(within [2, 4]), undefined %zu",
          sd, lo, hi, hill_undef);
  if (!ck.empty())
    detail += fmt("; count-ratio column for context: sd %.3f, range [%.2f, %.2f], "
                  "undefined %zu",
                  oracle::sd_of(ck), *std::min_element(ck.begin(), ck.end()),
                  *std::max_element(ck.begin(), ck.end()), ck_undef);
  report(4, pass, detail);
}

// 5: envelope bound over prior draws
void criterion_envelope() {
  ParmixHyper hyper;
  hyper.sched = default_schedule(100000);
  int violations = 0;
  for (int s = 0; s < 1000; ++s) {
    const auto mix = parmix_prior_sample(hyper, 30, derive_seed(1, "envelope", 1000, s));
    for (double x : {1.0, 10.0, 1e3, 1e6}) {
      if (!h_envelope(mix, hyper.sched, x).holds) ++violations;
    }
  }
  report(5, violations == 0,
         fmt("1000 prior draws x 4 grid points: %d violations", violations));
}

// 6: restricted sampler against the conjugate truncated-gamma posterior
void criterion_conjugate() {
  bool pass = true;
  std::string detail = "3 seeded datasets, 3 MCSE bands:";
  for (std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
    const auto data = sample(ParetoMixture(1.0, 1.2), 1000, seed);
    ParmixHyper hyper;
    hyper.sched = default_schedule(1000);
    McmcConfig cfg;
    cfg.truncation = 0;
    cfg.n_iter = 60000;
    cfg.burn_in = 10000;
    cfg.seed = seed + 7;
    const auto chain = run_chain(data, hyper, cfg);

    double sum_lx = 0.0;
    for (double x : data) sum_lx += std::log(x);
    const double shape = static_cast<double>(data.size()) + 1.0;
    const double om = oracle::trunc_gamma_mean(shape, sum_lx, hyper.sched.alpha_bar);
    const double os = oracle::trunc_gamma_sd(shape, sum_lx, hyper.sched.alpha_bar);

    const std::size_t B = 25, len = chain.alpha1.size() / B;
    std::vector<double> bm, bs;
    for (std::size_t b = 0; b < B; ++b) {
      std::vector<double> seg(chain.alpha1.begin() + b * len,
                              chain.alpha1.begin() + (b + 1) * len);
      bm.push_back(oracle::mean_of(seg));
      bs.push_back(oracle::sd_of(seg));
    }
    const double mcse_mean = oracle::sd_of(bm) / std::sqrt(static_cast<double>(B));
    const double mcse_sd = oracle::sd_of(bs) / std::sqrt(static_cast<double>(B));
    const double zm = std::fabs(oracle::mean_of(chain.alpha1) - om) / mcse_mean;
    const double zs = std::fabs(oracle::sd_of(chain.alpha1) - os) / mcse_sd;
    pass = pass && zm <= 3.0 && zs <= 3.0;
    detail += fmt(" [seed %llu: mean %.2f sd %.2f MCSE]", (unsigned long long)seed, zm, zs);
  }
  report(6, pass, detail);
}

// 7: two-observation allocation law against grid enumeration
void criterion_allocation() {
  const std::vector<double> data = {1.5, 12.0};
  ParmixHyper hyper;
  hyper.sched = default_schedule(100);
  const Schedule& sc = hyper.sched;
  McmcConfig cfg;
  cfg.truncation = 1;
  cfg.n_iter = 33000;
  cfg.burn_in = 3000;
  cfg.seed = 77;
  const auto chain = run_chain(data, hyper, cfg);

  const auto comp = [&](double w1, double a1, double a2, double x) {
    const double lead = w1 * a1 * std::pow(x, -a1 - 1.0);
    const double sec = (1.0 - w1) * a2 * std::pow(x, -a2 - 1.0);
    return std::array<double, 2>{lead / (lead + sec), sec / (lead + sec)};
  };

  std::array<double, 4> rb{};
  for (std::size_t i = 0; i < chain.alpha1.size(); ++i) {
    const auto p1 = comp(chain.w1[i], chain.alpha1[i], chain.secondary_exponents[i][0],
                         data[0]);
    const auto p2 = comp(chain.w1[i], chain.alpha1[i], chain.secondary_exponents[i][0],
                         data[1]);
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v) rb[2 * u + v] += p1[u] * p2[v];
  }
  for (double& p : rb) p /= static_cast<double>(chain.alpha1.size());

  const int G = 60;
  std::array<double, 4> grid{};
  double total = 0.0;
  for (int ga = 0; ga < G; ++ga) {
    const double a1 = sc.alpha_bar * (ga + 0.5) / G;
    for (int gw = 0; gw < G; ++gw) {
      const double w1 = sc.w_low + (1.0 - sc.w_low) * (gw + 0.5) / G;
      for (int go = 0; go < G; ++go) {
        const double a2 = a1 + sc.tau + sc.alpha_bar * (go + 0.5) / G;
        double lik = 1.0;
        for (double x : data)
          lik *= w1 * a1 * std::pow(x, -a1 - 1.0) +
                 (1.0 - w1) * a2 * std::pow(x, -a2 - 1.0);
        const auto p1 = comp(w1, a1, a2, data[0]);
        const auto p2 = comp(w1, a1, a2, data[1]);
        for (int u = 0; u < 2; ++u)
          for (int v = 0; v < 2; ++v) grid[2 * u + v] += lik * p1[u] * p2[v];
        total += lik;
      }
    }
  }
  for (double& p : grid) p /= total;

  double tv = 0.0;
  for (int k = 0; k < 4; ++k) tv += std::fabs(rb[k] - grid[k]);
  tv *= 0.5;
  report(7, tv < 0.05, fmt("total variation to the enumeration oracle: %.4f (< 0.05)", tv));
}

// 8: contraction of the posterior over growing sample sizes
void criterion_consistency() {
  ConsistencyConfig cfg;  // truth 0.5 x^-1 + 0.5 x^-3; n in {500, 5000, 50000}; 10 reps
  cfg.mcmc.n_iter = 2500;
  cfg.mcmc.burn_in = 500;
  cfg.mcmc.truncation = 5;
  cfg.threads = 1;
  const auto res = run_consistency_experiment(cfg);

  std::map<std::uint64_t, std::map<std::uint64_t, std::map<std::string, double>>> cell;
  for (const auto& r : res.rows) cell[r.n][r.replicate][r.statistic] = r.value;

  int sd_monotone = 0, mass_strict = 0, mass_saturated = 0;
  std::vector<double> means_large;
  for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep) {
    const double sd500 = cell[500][rep]["post_sd_alpha1"];
    const double sd5k = cell[5000][rep]["post_sd_alpha1"];
    const double sd50k = cell[50000][rep]["post_sd_alpha1"];
    if (sd500 > sd5k && sd5k > sd50k) ++sd_monotone;
    const double m500 = cell[500][rep]["mass_eps_0.5"];
    const double m50k = cell[50000][rep]["mass_eps_0.5"];
    if (m50k > m500)
      ++mass_strict;
    else if (m50k >= 1.0 - 1e-12)
      ++mass_saturated;  // both ends at the maximum: nothing left to gain
    means_large.push_back(cell[50000][rep]["post_mean_alpha1"]);
  }
  std::sort(means_large.begin(), means_large.end());
  const double median_mean = 0.5 * (means_large[4] + means_large[5]);

  const bool pass_a = sd_monotone >= 9;
  const bool pass_b = mass_strict + mass_saturated >= 9;
  const bool pass_c = std::fabs(median_mean - 1.0) <= 0.25;
  report(8, pass_a && pass_b && pass_c,
         fmt("(a) sd monotone %d/10; (b) neighborhood mass up %d strict + %d saturated "
             "at 1.0; (c) median posterior mean at n=50000: %.3f (within 0.25 of 1)",
             sd_monotone, mass_strict, mass_saturated, median_mean));
}

// 9: divergence checklist along the truncation and box families
void criterion_kl() {
  KlChecklistConfig cfg;  // truth 0.5 x^-1 + 0.5 x^-2; ladder {5,10,20,40}; radii {0.2,0.1,0.05}
  const auto rows = run_kl_checklist(cfg);
  bool pass = rows.size() == 8;
  double self_kl = 1.0;
  std::vector<double> ladder, boxes;
  for (const auto& r : rows) {
    pass = pass && r.defined;
    if (r.statistic == "kl_self") self_kl = r.value;
    if (r.statistic.rfind("kl_truncation_", 0) == 0) ladder.push_back(r.value);
    if (r.statistic.rfind("kl_box_", 0) == 0) boxes.push_back(r.value);
  }
  pass = pass && std::fabs(self_kl) < 1e-9;
  for (std::size_t i = 1; i < ladder.size(); ++i)
    pass = pass && ladder[i] < ladder[i - 1] && ladder[i] > 0.0;
  for (std::size_t i = 1; i < boxes.size(); ++i)
    pass = pass && boxes[i] < boxes[i - 1] && boxes[i] > 0.0;
  report(9, pass,
         fmt("self divergence %.1e (< 1e-9); truncation ladder %.2e > %.2e > %.2e > %.2e; "
             "boxes %.2e > %.2e > %.2e",
             self_kl, ladder[0], ladder[1], ladder[2], ladder[3], boxes[0], boxes[1],
             boxes[2]));
}

// 10: byte-identical reruns for every experiment kind, across thread counts
void criterion_determinism() {
  const fs::path root = fs::temp_directory_path() / "tailmix_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  const auto write_config = [&](const std::string& name, nlohmann::json j) {
    const fs::path p = root / (name + ".json");
    std::ofstream(p) << j.dump(2);
    return p;
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  std::vector<std::pair<std::string, nlohmann::json>> kinds = {
      {"calibration",
       {{"kind", "estimator_calibration"}, {"alphas", {1.0, 2.0}}, {"n", 2000},
        {"replicates", 5}}},
      {"demo",
       {{"kind", "singleton_index_demo"}, {"draws", 5}, {"n", 4000}}},
      {"consistency",
       {{"kind", "parmix_consistency"}, {"sample_sizes", {400}}, {"replicates", 2},
        {"eps_list", {0.5}},
        {"mcmc", {{"n_iter", 300}, {"burn_in", 100}, {"truncation", 2}}}}},
      {"kl",
       {{"kind", "kl_checklist"}, {"truncation_ladder", {5.0, 10.0}},
        {"box_radii", {0.2, 0.1}}}},
  };

  bool pass = true;
  std::string detail;
  for (auto& [name, j] : kinds) {
    const fs::path cfg_path = write_config(name, j);
    RunOverrides a, b, c;
    a.out_dir = (root / (name + "_a")).string();
    b.out_dir = (root / (name + "_b")).string();
    c.out_dir = (root / (name + "_c")).string();
    c.threads = 3;
    const auto pa = run_experiment_file(cfg_path, a);
    const auto pb = run_experiment_file(cfg_path, b);
    const auto pc = run_experiment_file(cfg_path, c);
    bool same = pa.size() == pb.size() && pa.size() == pc.size();
    if (same) {
      for (std::size_t i = 0; i < pa.size(); ++i) {
        const std::string bytes = slurp(pa[i]);
        same = same && bytes == slurp(pb[i]) && bytes == slurp(pc[i]);
      }
    }
    pass = pass && same;
    detail += fmt("%s%s %s", detail.empty() ? "" : ", ", name.c_str(),
                  same ? "identical" : "DIFFERS");
  }
  report(10, pass, detail + " (each kind run twice at 1 thread and once at 3)");
}

}  // namespace

int main() {
  criterion_calibration();
  criterion_laplace();
  criterion_table();
  criterion_demo();
  criterion_envelope();
  criterion_conjugate();
  criterion_allocation();
  criterion_consistency();
  criterion_kl();
  criterion_determinism();
  std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
