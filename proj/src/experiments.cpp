#include "tailmix/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "tailmix/errors.hpp"
#include "tailmix/estimators.hpp"
#include "tailmix/rng.hpp"

namespace tailmix {

void parallel_cells(std::size_t count, int threads,
                    const std::function<void(std::size_t)>& work) {
  if (threads < 1) throw std::invalid_argument("parallel_cells: threads must be >= 1");
  const std::size_t workers = std::min<std::size_t>(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

// short form for statistic-name suffixes; config values are human-scale, so
// six significant digits identify them without round-trip noise
std::string label_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::domain_error("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<ResultRow> run_estimator_calibration(const CalibrationConfig& cfg) {
  if (cfg.replicates < 1) throw std::invalid_argument("calibration: replicates must be >= 1");
  if (cfg.alphas.empty()) throw std::invalid_argument("calibration: alphas must be nonempty");
  const Schedule sched = default_schedule(cfg.n);
  const std::size_t cells = cfg.alphas.size() * cfg.replicates;
  std::vector<ResultRow> rows(cells);
  parallel_cells(cells, cfg.threads, [&](std::size_t cell) {
    const double alpha = cfg.alphas[cell / cfg.replicates];
    const std::uint64_t rep = cell % cfg.replicates;
    const std::string unit = cfg.experiment_id + "/alpha=" + format_double(alpha);
    const std::uint64_t seed = derive_seed(cfg.seed_root, unit, cfg.n, rep);
    const ParetoMixture pure(1.0, alpha);
    const std::vector<double> data = sample(pure, cfg.n, seed);
    const std::optional<double> est = carpentier_kim(data, sched.s);
    rows[cell] = ResultRow{unit, cfg.n, rep, seed, "alpha_hat_ck",
                           est.value_or(std::numeric_limits<double>::quiet_NaN()),
                           est.has_value()};
  });
  return rows;
}

namespace {

// Raw base draw plus how many draws had to be clamped at DBL_MAX. The
// super-heavy shape inverts survival 1/loglog(x), which exceeds double range
// with probability about 0.15 per draw.
double demo_base_draw(DemoBase base, Rng& rng, long long& overflow) {
  switch (base) {
    case DemoBase::NormalThin:
      return rng.normal();
    case DemoBase::ExponentialThin:
      return rng.exponential();
    case DemoBase::LognormalThin:
      return std::exp(0.3 * rng.normal());
    case DemoBase::SuperHeavyLogLog: {
      const double u = rng.uniform01();
      const double log_log_x = 1.0 / u;
      if (log_log_x > std::log(std::log(DBL_MAX))) {
        ++overflow;
        return DBL_MAX;
      }
      return std::exp(std::exp(log_log_x));
    }
  }
  throw std::logic_error("demo_base_draw: unreachable");
}

TailIndex demo_base_tail(DemoBase base) {
  switch (base) {
    case DemoBase::NormalThin:
    case DemoBase::ExponentialThin:
    case DemoBase::LognormalThin:
      return TailIndex::infinity();
    case DemoBase::SuperHeavyLogLog:
      return TailIndex::zero();
  }
  throw std::logic_error("demo_base_tail: unreachable");
}

TailDescriptor demo_base_descriptor(DemoBase base) {
  switch (base) {
    case DemoBase::NormalThin:
    case DemoBase::ExponentialThin:
    case DemoBase::LognormalThin:
      return TailDescriptor::sub_poly();
    case DemoBase::SuperHeavyLogLog:
      return TailDescriptor::super_heavy_loglog();
  }
  throw std::logic_error("demo_base_descriptor: unreachable");
}

}  // namespace

SingletonDemoResult run_singleton_demo(const SingletonDemoConfig& cfg) {
  if (cfg.draws < 1) throw std::invalid_argument("singleton demo: draws must be >= 1");
  if (!(cfg.kernel_index > 0.0))
    throw std::invalid_argument("singleton demo: kernel index must be positive");
  SingletonDemoResult out;
  out.predicted = classify_mixture_tail(demo_base_tail(cfg.mu_base),
                                        demo_base_tail(cfg.sigma_base),
                                        TailIndex::finite(cfg.kernel_index));
  if (cfg.use_dp) {
    out.mu_base_case = classify_base_measure(demo_base_descriptor(cfg.mu_base), PriorKind::Dp);
    out.sigma_base_case =
        classify_base_measure(demo_base_descriptor(cfg.sigma_base), PriorKind::Dp);
  }

  const Schedule sched = default_schedule(cfg.n);
  std::vector<std::array<ResultRow, 3>> cells(cfg.draws);
  parallel_cells(cfg.draws, cfg.threads, [&](std::size_t draw) {
    const std::uint64_t seed = derive_seed(cfg.seed_root, cfg.experiment_id, cfg.n, draw);
    Rng rng(seed);
    long long overflow = 0;

    // one atom = (mu, sigma); sigma goes through |.| so a signed base still
    // yields a scale
    const auto draw_location = [&](Rng& r) -> std::array<double, 2> {
      const double mu = demo_base_draw(cfg.mu_base, r, overflow);
      double sigma = std::fabs(demo_base_draw(cfg.sigma_base, r, overflow));
      if (sigma < 1e-12) sigma = 1e-12;
      return {mu, sigma};
    };

    std::vector<double> weights;
    std::vector<std::array<double, 2>> atoms;
    if (cfg.use_dp) {
      auto measure = sample_nrm<std::array<double, 2>>(
          LevySpec{cfg.dp_mass, 0.0, 1.0}, draw_location, cfg.nrm_atoms, rng.raw());
      weights = std::move(measure.weights);
      atoms = std::move(measure.locations);
    } else {
      const std::size_t count = 1 + rng.poisson(cfg.mfm_mean_extra_atoms);
      weights = rng.dirichlet(std::vector<double>(count, 1.0));
      atoms.reserve(count);
      for (std::size_t j = 0; j < count; ++j) atoms.push_back(draw_location(rng));
    }

    std::vector<double> data(cfg.n);
    for (std::uint64_t i = 0; i < cfg.n; ++i) {
      double u = rng.uniform01();
      std::size_t j = 0;
      while (j + 1 < weights.size() && u >= weights[j]) {
        u -= weights[j];
        ++j;
      }
      double x = atoms[j][0] + atoms[j][1] * rng.student_t(cfg.kernel_index);
      if (!std::isfinite(x)) {
        ++overflow;
        x = x > 0.0 ? DBL_MAX : -DBL_MAX;
      }
      data[i] = x;
    }

    const std::optional<double> ck = carpentier_kim(data, sched.s);

    // Hill acts on the upper tail, so restrict to the positive part and use
    // the top percent of it.
    std::vector<double> positive;
    positive.reserve(data.size());
    for (double x : data)
      if (x > 0.0) positive.push_back(x);
    std::optional<double> hill_est;
    const std::size_t k = std::max<std::size_t>(10, positive.size() / 100);
    if (k + 1 < positive.size()) hill_est = hill(positive, k);

    cells[draw] = {
        ResultRow{cfg.experiment_id, cfg.n, draw, seed, "alpha_hat_ck",
                  ck.value_or(std::numeric_limits<double>::quiet_NaN()), ck.has_value()},
        ResultRow{cfg.experiment_id, cfg.n, draw, seed, "alpha_hat_hill",
                  hill_est.value_or(std::numeric_limits<double>::quiet_NaN()),
                  hill_est.has_value()},
        ResultRow{cfg.experiment_id, cfg.n, draw, seed, "overflow_count",
                  static_cast<double>(overflow), true},
    };
  });
  for (auto& cell : cells)
    for (auto& row : cell) out.rows.push_back(std::move(row));
  return out;
}

ConsistencyResult run_consistency_experiment(const ConsistencyConfig& cfg) {
  if (cfg.replicates < 1) throw std::invalid_argument("consistency: replicates must be >= 1");
  if (cfg.sample_sizes.empty())
    throw std::invalid_argument("consistency: sample sizes must be nonempty");
  if (!std::is_sorted(cfg.sample_sizes.begin(), cfg.sample_sizes.end()) ||
      std::adjacent_find(cfg.sample_sizes.begin(), cfg.sample_sizes.end()) !=
          cfg.sample_sizes.end())
    throw std::invalid_argument("consistency: sample sizes must be strictly increasing");
  cfg.mcmc.validate();

  const ParetoMixture truth_mix = cfg.truth.to_mixture();
  const double alpha0 = cfg.truth.leading_exponent();
  const std::size_t n_sizes = cfg.sample_sizes.size();
  const std::size_t cells = n_sizes * cfg.replicates;

  struct Cell {
    std::vector<ResultRow> rows;
    double sd = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> mass;
    bool ok = false;
  };
  std::vector<Cell> grid(cells);

  parallel_cells(cells, cfg.threads, [&](std::size_t cell) {
    const std::uint64_t n = cfg.sample_sizes[cell / cfg.replicates];
    const std::uint64_t rep = cell % cfg.replicates;
    const std::uint64_t seed = derive_seed(cfg.seed_root, cfg.experiment_id, n, rep);
    Cell& slot = grid[cell];

    const std::vector<double> data = sample(truth_mix, n, seed);
    ParmixHyper hyper;
    hyper.sched = default_schedule(n);

    const auto run_once = [&](std::size_t truncation, const char* suffix) {
      McmcConfig mc = cfg.mcmc;
      mc.truncation = truncation;
      mc.seed = splitmix64(seed ^ fnv1a64(suffix));
      const McmcChain chain = run_chain(data, hyper, mc);
      const std::vector<double> probs = {0.5};
      const PosteriorSummary base =
          posterior_tail_summary(chain, probs, alpha0, cfg.eps_list.front());
      slot.rows.push_back(ResultRow{cfg.experiment_id, n, rep, seed,
                                    std::string("post_mean_alpha1") + suffix, base.mean, true});
      slot.rows.push_back(ResultRow{cfg.experiment_id, n, rep, seed,
                                    std::string("post_sd_alpha1") + suffix, base.sd, true});
      slot.rows.push_back(ResultRow{cfg.experiment_id, n, rep, seed,
                                    std::string("post_median_alpha1") + suffix,
                                    base.quantiles.front(), true});
      std::vector<double> masses;
      for (double eps : cfg.eps_list) {
        const PosteriorSummary at_eps = posterior_tail_summary(chain, {}, alpha0, eps);
        slot.rows.push_back(ResultRow{
            cfg.experiment_id, n, rep, seed,
            "mass_eps_" + label_double(eps) + suffix, at_eps.neighborhood_mass, true});
        masses.push_back(at_eps.neighborhood_mass);
      }
      return std::pair<double, std::vector<double>>(base.sd, std::move(masses));
    };

    try {
      auto [sd, masses] = run_once(cfg.mcmc.truncation, "");
      slot.sd = sd;
      slot.mass = std::move(masses);
      if (cfg.check_double_truncation) run_once(cfg.mcmc.truncation * 2, "_2k");
      const TestOutcome test = uniform_test(data, alpha0, cfg.test_eps, hyper.sched);
      slot.rows.push_back(ResultRow{cfg.experiment_id, n, rep, seed, "test_reject",
                                    test.reject ? 1.0 : 0.0, !test.not_defined});
      slot.ok = true;
    } catch (const InitFailureError&) {
      slot.rows.clear();
      slot.rows.push_back(ResultRow{
          cfg.experiment_id, n, rep, seed, "init_failure", 1.0, true});
    }
  });

  ConsistencyResult out;
  out.sample_sizes = cfg.sample_sizes;
  out.median_mass.assign(cfg.eps_list.size(), std::vector<double>(n_sizes, 0.0));
  for (std::size_t si = 0; si < n_sizes; ++si) {
    std::vector<double> sds;
    std::vector<std::vector<double>> masses(cfg.eps_list.size());
    for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep) {
      const Cell& slot = grid[si * cfg.replicates + rep];
      for (const ResultRow& r : slot.rows) out.rows.push_back(r);
      if (!slot.ok) continue;
      sds.push_back(slot.sd);
      for (std::size_t ei = 0; ei < cfg.eps_list.size(); ++ei)
        masses[ei].push_back(slot.mass[ei]);
    }
    out.median_sd.push_back(sds.empty() ? std::numeric_limits<double>::quiet_NaN()
                                        : median_of(sds));
    for (std::size_t ei = 0; ei < cfg.eps_list.size(); ++ei)
      out.median_mass[ei][si] = masses[ei].empty()
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : median_of(masses[ei]);
  }
  return out;
}

namespace {

// Step-(i) family: push every remainder atom at or below the open window edge
// alpha0 (1 + beta) just inside it, by the window-indexed margin edge / a, and
// drop (renormalizing onto the kept atoms) anything beyond alpha_bar + tau.
TruthSpec truncated_family_member(const TruthSpec& truth, const Schedule& sched, double a) {
  const double lo = truth.leading_exponent() * (1.0 + truth.beta());
  const double hi = sched.alpha_bar + sched.tau;
  std::vector<Component> kept;
  double kept_weight = 0.0;
  for (const Component& c : truth.remainder()) {
    if (c.exponent > hi) continue;
    Component moved = c;
    if (moved.exponent <= lo) moved.exponent = lo + lo / a;
    kept.push_back(moved);
    kept_weight += moved.weight;
  }
  if (kept.empty()) throw std::domain_error("truncation family emptied the remainder");
  const double scale = (1.0 - truth.leading_weight()) / kept_weight;
  for (Component& c : kept) c.weight *= scale;
  return TruthSpec(truth.leading_weight(), truth.leading_exponent(), truth.beta(), kept);
}

}  // namespace

std::vector<ResultRow> run_kl_checklist(const KlChecklistConfig& cfg) {
  const Schedule sched = default_schedule(cfg.schedule_n);
  const ParetoMixture truth_mix = cfg.truth.to_mixture();
  std::vector<ResultRow> rows;
  const auto push = [&](const std::string& stat, double value, bool defined) {
    rows.push_back(ResultRow{cfg.experiment_id, cfg.schedule_n, 0, 0, stat, value, defined});
  };

  push("kl_self", kl_divergence(cfg.truth, truth_mix), true);

  for (double a : cfg.truncation_ladder) {
    try {
      const TruthSpec member = truncated_family_member(cfg.truth, sched, a);
      push("kl_truncation_" + label_double(a),
           kl_divergence(cfg.truth, member.to_mixture()), true);
    } catch (const DivergentIntegralError&) {
      push("kl_truncation_" + label_double(a),
           std::numeric_limits<double>::quiet_NaN(), false);
    }
  }

  for (double eta : cfg.box_radii) {
    // worst corner of the (w1, alpha1) box around the truth; radius eta in
    // the exponent, eta / 10 in the weight
    double worst = 0.0;
    bool defined = true;
    for (int dw : {-1, 1}) {
      for (int da : {-1, 1}) {
        double w1 = cfg.truth.leading_weight() + dw * eta * 0.1;
        double a1 = cfg.truth.leading_exponent() + da * eta;
        w1 = std::clamp(w1, 1e-9, 1.0 - 1e-9);
        a1 = std::max(a1, 1e-9);
        std::vector<Component> atoms = cfg.truth.remainder();
        double atom_weight = 0.0;
        for (const Component& c : atoms) atom_weight += c.weight;
        const double scale = (1.0 - w1) / atom_weight;
        std::vector<Component> scaled = atoms;
        for (Component& c : scaled) c.weight *= scale;
        try {
          const double kl =
              kl_divergence(cfg.truth, ParetoMixture(w1, a1, scaled));
          worst = std::max(worst, kl);
        } catch (const DivergentIntegralError&) {
          defined = false;
        }
      }
    }
    push("kl_box_" + label_double(eta), worst, defined);
  }
  return rows;
}

namespace {

using nlohmann::json;

TruthSpec truth_from_json(const json& j) {
  std::vector<Component> remainder;
  for (const auto& atom : j.at("remainder"))
    remainder.push_back(Component{atom.at("weight").get<double>(),
                                  atom.at("exponent").get<double>()});
  return TruthSpec(j.at("leading_weight").get<double>(),
                   j.at("leading_exponent").get<double>(), j.at("beta").get<double>(),
                   std::move(remainder));
}

McmcConfig mcmc_from_json(const json& j) {
  McmcConfig cfg;
  if (j.contains("n_iter")) cfg.n_iter = j.at("n_iter").get<std::uint64_t>();
  if (j.contains("burn_in")) cfg.burn_in = j.at("burn_in").get<std::uint64_t>();
  if (j.contains("thin")) cfg.thin = j.at("thin").get<std::uint64_t>();
  if (j.contains("truncation")) cfg.truncation = j.at("truncation").get<std::size_t>();
  if (j.contains("leading_step")) cfg.leading_step = j.at("leading_step").get<double>();
  if (j.contains("secondary_step"))
    cfg.secondary_step = j.at("secondary_step").get<double>();
  return cfg;
}

DemoBase demo_base_from_json(const std::string& s) {
  if (s == "normal") return DemoBase::NormalThin;
  if (s == "exponential") return DemoBase::ExponentialThin;
  if (s == "lognormal") return DemoBase::LognormalThin;
  if (s == "super_heavy_loglog") return DemoBase::SuperHeavyLogLog;
  throw std::invalid_argument("unknown base regime: " + s);
}

void write_plot_csv(const std::filesystem::path& path, const std::string& y_name,
                    std::span<const std::uint64_t> xs, std::span<const double> ys) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "# format_version=" << kFormatVersion << '\n';
  out << "n," << y_name << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << xs[i] << ',' << format_double(ys[i]) << '\n';
}

}  // namespace

std::vector<std::filesystem::path> run_experiment_file(
    const std::filesystem::path& config_path, const RunOverrides& overrides) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + config_path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }

  const std::string kind = j.at("kind").get<std::string>();
  const std::filesystem::path out_dir =
      overrides.out_dir.value_or(j.value("out_dir", std::string("results")));
  std::filesystem::create_directories(out_dir);
  const std::uint64_t seed_root = overrides.seed.value_or(j.value("seed_root", 1ULL));
  const int threads = overrides.threads.value_or(j.value("threads", 1));

  std::vector<std::filesystem::path> written;
  const auto emit_rows = [&](const std::vector<ResultRow>& rows) {
    const auto path = out_dir / "results.csv";
    write_result_csv(path, rows);
    written.push_back(path);
  };
  const auto emit_summary = [&](json summary) {
    summary["format_version"] = kFormatVersion;
    summary["kind"] = kind;
    summary["seed_root"] = seed_root;
    const auto path = out_dir / "summary.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << summary.dump(2) << '\n';
    written.push_back(path);
  };

  if (kind == "estimator_calibration") {
    CalibrationConfig cfg;
    cfg.seed_root = seed_root;
    cfg.threads = threads;
    if (j.contains("experiment_id")) cfg.experiment_id = j.at("experiment_id");
    if (j.contains("alphas")) cfg.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("n")) cfg.n = j.at("n").get<std::uint64_t>();
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::uint64_t>();
    const auto rows = run_estimator_calibration(cfg);
    emit_rows(rows);
    std::size_t defined = 0;
    for (const auto& r : rows)
      if (r.defined) ++defined;
    emit_summary({{"rows", rows.size()}, {"defined_rows", defined}});
    return written;
  }

  if (kind == "singleton_index_demo") {
    SingletonDemoConfig cfg;
    cfg.seed_root = seed_root;
    cfg.threads = threads;
    if (j.contains("experiment_id")) cfg.experiment_id = j.at("experiment_id");
    if (j.contains("use_dp")) cfg.use_dp = j.at("use_dp").get<bool>();
    if (j.contains("dp_mass")) cfg.dp_mass = j.at("dp_mass").get<double>();
    if (j.contains("mfm_mean_extra_atoms"))
      cfg.mfm_mean_extra_atoms = j.at("mfm_mean_extra_atoms").get<double>();
    if (j.contains("mu_base")) cfg.mu_base = demo_base_from_json(j.at("mu_base"));
    if (j.contains("sigma_base")) cfg.sigma_base = demo_base_from_json(j.at("sigma_base"));
    if (j.contains("kernel_index")) cfg.kernel_index = j.at("kernel_index").get<double>();
    if (j.contains("draws")) cfg.draws = j.at("draws").get<std::uint64_t>();
    if (j.contains("n")) cfg.n = j.at("n").get<std::uint64_t>();
    if (j.contains("nrm_atoms")) cfg.nrm_atoms = j.at("nrm_atoms").get<std::size_t>();
    const auto result = run_singleton_demo(cfg);
    emit_rows(result.rows);
    json summary;
    summary["predicted_index"] = result.predicted.index.is_infinite()
                                     ? json("inf")
                                     : json(result.predicted.index.value());
    if (result.predicted.table_case) summary["table_case"] = *result.predicted.table_case;
    const auto case_name = [](BaseCase c) {
      switch (c) {
        case BaseCase::CaseI: return "case_i";
        case BaseCase::CaseII: return "case_ii";
        default: return "uncovered";
      }
    };
    if (result.mu_base_case) summary["mu_base_case"] = case_name(*result.mu_base_case);
    if (result.sigma_base_case)
      summary["sigma_base_case"] = case_name(*result.sigma_base_case);
    emit_summary(std::move(summary));
    return written;
  }

  if (kind == "parmix_consistency") {
    ConsistencyConfig cfg;
    cfg.seed_root = seed_root;
    cfg.threads = threads;
    if (j.contains("experiment_id")) cfg.experiment_id = j.at("experiment_id");
    if (j.contains("truth")) cfg.truth = truth_from_json(j.at("truth"));
    if (j.contains("sample_sizes"))
      cfg.sample_sizes = j.at("sample_sizes").get<std::vector<std::uint64_t>>();
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::uint64_t>();
    if (j.contains("eps_list")) cfg.eps_list = j.at("eps_list").get<std::vector<double>>();
    if (j.contains("test_eps")) cfg.test_eps = j.at("test_eps").get<double>();
    if (j.contains("mcmc")) cfg.mcmc = mcmc_from_json(j.at("mcmc"));
    if (j.contains("check_double_truncation"))
      cfg.check_double_truncation = j.at("check_double_truncation").get<bool>();
    const auto result = run_consistency_experiment(cfg);
    emit_rows(result.rows);
    {
      const auto path = out_dir / "plot_posterior_sd.csv";
      write_plot_csv(path, "median_post_sd_alpha1", result.sample_sizes, result.median_sd);
      written.push_back(path);
    }
    for (std::size_t ei = 0; ei < cfg.eps_list.size(); ++ei) {
      const auto path =
          out_dir / ("plot_mass_eps_" + label_double(cfg.eps_list[ei]) + ".csv");
      write_plot_csv(path, "median_neighborhood_mass", result.sample_sizes,
                     result.median_mass[ei]);
      written.push_back(path);
    }
    emit_summary({{"rows", result.rows.size()},
                  {"sample_sizes", result.sample_sizes},
                  {"median_post_sd", result.median_sd}});
    return written;
  }

  if (kind == "kl_checklist") {
    KlChecklistConfig cfg;
    if (j.contains("experiment_id")) cfg.experiment_id = j.at("experiment_id");
    if (j.contains("truth")) cfg.truth = truth_from_json(j.at("truth"));
    if (j.contains("schedule_n")) cfg.schedule_n = j.at("schedule_n").get<std::uint64_t>();
    if (j.contains("truncation_ladder"))
      cfg.truncation_ladder = j.at("truncation_ladder").get<std::vector<double>>();
    if (j.contains("box_radii"))
      cfg.box_radii = j.at("box_radii").get<std::vector<double>>();
    const auto rows = run_kl_checklist(cfg);
    emit_rows(rows);
    emit_summary({{"rows", rows.size()}});
    return written;
  }

  throw std::invalid_argument("unknown experiment kind: " + kind);
}

}  // namespace tailmix
