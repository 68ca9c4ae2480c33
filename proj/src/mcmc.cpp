#include "tailmix/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tailmix/errors.hpp"
#include "tailmix/io.hpp"
#include "tailmix/rng.hpp"

namespace tailmix {

void McmcConfig::validate() const {
  if (n_iter == 0) throw std::invalid_argument("McmcConfig: n_iter must be positive");
  if (burn_in >= n_iter) throw std::invalid_argument("McmcConfig: burn_in must be below n_iter");
  if (thin == 0) throw std::invalid_argument("McmcConfig: thin must be positive");
  if (!(leading_step > 0.0) || !(secondary_step > 0.0))
    throw std::invalid_argument("McmcConfig: proposal scales must be positive");
  // truncation == 0 is the documented pure leading-component restriction
}

namespace {

struct State {
  double alpha1;
  double w1;
  std::vector<double> offsets;  // secondary exponent = alpha1 + tau + offset
  std::vector<double> weights;  // secondary weights, sum to 1 - w1
};

double secondary_exponent(const State& st, const Schedule& sc, std::size_t j) {
  return st.alpha1 + sc.tau + st.offsets[j];
}

}  // namespace

McmcChain run_chain(std::span<const double> data, const ParmixHyper& hyper,
                    const McmcConfig& cfg) {
  cfg.validate();
  const Schedule& sc = hyper.sched;
  if (sc.n < 3) throw std::invalid_argument("run_chain: schedule is not initialized");
  for (double x : data)
    if (!(x >= 1.0) || !std::isfinite(x))
      throw std::domain_error("run_chain: data must be finite and >= 1");

  const std::size_t n = data.size();  // 0 selects prior mode
  const std::size_t K = cfg.truncation;
  Rng rng(cfg.seed);

  std::vector<double> lx(n);
  for (std::size_t i = 0; i < n; ++i) lx[i] = std::log(data[i]);
  const double sum_lx_all = [&] {
    double s = 0.0;
    for (double v : lx) s += v;
    return s;
  }();

  const double a_eff = [&] {
    if (const MfmPrior* mfm = std::get_if<MfmPrior>(&hyper.h_prior)) return mfm->dirichlet_a;
    // finite symmetric-Dirichlet stand-in for the NRM weight conditional at
    // truncation K; approximation, as for the stick-breaking case
    return std::get<NrmPrior>(hyper.h_prior).spec.a / static_cast<double>(std::max<std::size_t>(K, 1));
  }();

  // initialization: prior draws, leading exponent forced across a widening
  // grid until the state has finite log likelihood
  State st;
  bool initialized = false;
  for (int attempt = 0; attempt < 100 && !initialized; ++attempt) {
    st.alpha1 = (attempt == 0) ? 0.5 * sc.alpha_bar
                               : rng.uniform01() * sc.alpha_bar;
    st.w1 = (K == 0) ? 1.0 : rng.uniform(sc.w_low, 1.0);
    st.offsets.assign(K, 0.0);
    st.weights.assign(K, 0.0);
    for (std::size_t j = 0; j < K; ++j) st.offsets[j] = rng.uniform01() * sc.alpha_bar;
    if (K > 0) {
      auto v = rng.dirichlet(std::vector<double>(K, 1.0));
      for (std::size_t j = 0; j < K; ++j) st.weights[j] = (1.0 - st.w1) * v[j];
    }
    double ll = 0.0;
    for (std::size_t i = 0; i < n && std::isfinite(ll); ++i) {
      double acc = st.w1 * st.alpha1 * std::exp(-st.alpha1 * lx[i]);
      for (std::size_t j = 0; j < K; ++j) {
        const double aj = secondary_exponent(st, sc, j);
        acc += st.weights[j] * aj * std::exp(-aj * lx[i]);
      }
      ll += std::log(acc);
    }
    initialized = std::isfinite(ll);
  }
  if (!initialized)
    throw InitFailureError("run_chain: no positive-likelihood initialization in 100 attempts");

  std::vector<long long> count(K + 1, 0);
  std::vector<double> sum_lx(K + 1, 0.0);
  std::vector<int> alloc(n, 0);
  std::vector<double> logit(K + 1), comp_exp(K + 1);

  McmcChain chain;
  chain.config = cfg;
  chain.data_digest = dataset_digest(data);
  chain.data_size = n;

  std::uint64_t lead_attempts = 0, lead_accepts = 0;
  std::uint64_t sec_attempts = 0, sec_accepts = 0;
  std::uint64_t weight_updates = 0, weight_fallbacks = 0;

  for (std::uint64_t iter = 0; iter < cfg.n_iter; ++iter) {
    // allocations and sufficient statistics
    std::fill(count.begin(), count.end(), 0);
    std::fill(sum_lx.begin(), sum_lx.end(), 0.0);
    if (K == 0 || n == 0) {
      count[0] = static_cast<long long>(n);
      sum_lx[0] = sum_lx_all;
    } else {
      comp_exp[0] = st.alpha1;
      logit[0] = std::log(st.w1 * st.alpha1);
      for (std::size_t j = 0; j < K; ++j) {
        comp_exp[j + 1] = secondary_exponent(st, sc, j);
        logit[j + 1] = st.weights[j] > 0.0
                           ? std::log(st.weights[j] * comp_exp[j + 1])
                           : -std::numeric_limits<double>::infinity();
      }
      std::vector<double> prob(K + 1);
      for (std::size_t i = 0; i < n; ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j <= K; ++j) {
          prob[j] = logit[j] - comp_exp[j] * lx[i];
          if (prob[j] > best) best = prob[j];
        }
        double total = 0.0;
        for (std::size_t j = 0; j <= K; ++j) {
          prob[j] = std::exp(prob[j] - best);
          total += prob[j];
        }
        double pick = rng.uniform01() * total;
        std::size_t z = K;
        for (std::size_t j = 0; j <= K; ++j) {
          if (pick < prob[j]) {
            z = j;
            break;
          }
          pick -= prob[j];
        }
        alloc[i] = static_cast<int>(z);
        ++count[z];
        sum_lx[z] += lx[i];
      }
    }

    // leading exponent: random walk on log alpha1, secondary exponents
    // shifted rigidly so offsets from alpha1 + tau are preserved (unit
    // Jacobian, uniform offset priors unchanged)
    {
      ++lead_attempts;
      const double step = cfg.leading_step * rng.normal();
      const double alpha1_new = st.alpha1 * std::exp(step);
      const double accept_u = rng.uniform01();
      if (alpha1_new <= sc.alpha_bar) {
        const double shift = alpha1_new - st.alpha1;
        double log_ratio = step;  // Hastings term of the log walk
        log_ratio += count[0] * (std::log(alpha1_new) - std::log(st.alpha1)) - shift * sum_lx[0];
        for (std::size_t j = 0; j < K; ++j) {
          const double aj = secondary_exponent(st, sc, j);
          log_ratio += count[j + 1] * (std::log(aj + shift) - std::log(aj)) - shift * sum_lx[j + 1];
        }
        if (std::log(accept_u) < log_ratio) {
          st.alpha1 = alpha1_new;
          ++lead_accepts;
        }
      }
    }

    // weights: conditional given counts; leading weight is a Beta restricted
    // to [w_low, 1], secondary split is Dirichlet(count + a_eff)
    if (K > 0) {
      ++weight_updates;
      const double c0 = static_cast<double>(count[0]);
      const double c_rest = static_cast<double>(n) - c0;
      bool placed = false;
      for (int tries = 0; tries < 100 && !placed; ++tries) {
        const double w = rng.beta(c0 + 1.0, c_rest + 1.0);
        if (w >= sc.w_low) {
          st.w1 = w;
          placed = true;
        }
      }
      if (!placed) {
        ++weight_fallbacks;
        const double prop = rng.uniform(sc.w_low, 1.0);
        const double u = rng.uniform01();
        double log_ratio = 0.0;
        if (c0 > 0.0) log_ratio += c0 * (std::log(prop) - std::log(st.w1));
        if (c_rest > 0.0) log_ratio += c_rest * (std::log(1.0 - prop) - std::log(1.0 - st.w1));
        if (std::log(u) < log_ratio) st.w1 = prop;
      }
      std::vector<double> conc(K);
      for (std::size_t j = 0; j < K; ++j) conc[j] = static_cast<double>(count[j + 1]) + a_eff;
      const auto split = rng.dirichlet(conc);
      for (std::size_t j = 0; j < K; ++j) st.weights[j] = (1.0 - st.w1) * split[j];
    }

    // secondary exponents: random walks on the support window
    for (std::size_t j = 0; j < K; ++j) {
      ++sec_attempts;
      const double cur = secondary_exponent(st, sc, j);
      const double prop = cur + cfg.secondary_step * rng.normal();
      const double u = rng.uniform01();
      const double lo = st.alpha1 + sc.tau;
      if (!(prop > lo) || prop > lo + sc.alpha_bar) continue;
      const double log_ratio =
          count[j + 1] * (std::log(prop) - std::log(cur)) - (prop - cur) * sum_lx[j + 1];
      if (std::log(u) < log_ratio) {
        st.offsets[j] = prop - lo;
        ++sec_accepts;
      }
    }

    if (iter >= cfg.burn_in && (iter - cfg.burn_in) % cfg.thin == 0) {
      chain.alpha1.push_back(st.alpha1);
      chain.w1.push_back(st.w1);
      std::vector<double> exps(K), ws(K);
      for (std::size_t j = 0; j < K; ++j) {
        exps[j] = secondary_exponent(st, sc, j);
        ws[j] = st.weights[j];
      }
      chain.secondary_exponents.push_back(std::move(exps));
      chain.secondary_weights.push_back(std::move(ws));
    }
  }

  chain.acceptance.leading =
      lead_attempts ? static_cast<double>(lead_accepts) / lead_attempts : 0.0;
  chain.acceptance.secondary =
      sec_attempts ? static_cast<double>(sec_accepts) / sec_attempts : 0.0;
  chain.acceptance.weight_fallback =
      weight_updates ? static_cast<double>(weight_fallbacks) / weight_updates : 0.0;
  return chain;
}

PosteriorSummary posterior_tail_summary(const McmcChain& chain,
                                        std::span<const double> probs,
                                        double alpha0, double eps) {
  if (chain.alpha1.empty())
    throw std::invalid_argument("posterior_tail_summary: empty chain");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || probs[i] > 1.0)
      throw std::invalid_argument("posterior_tail_summary: probs must lie in [0, 1]");
    if (i > 0 && probs[i] < probs[i - 1])
      throw std::invalid_argument("posterior_tail_summary: probs must be nondecreasing");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("posterior_tail_summary: eps must be positive");

  PosteriorSummary out;
  const std::size_t m = chain.alpha1.size();
  double mean = 0.0;
  for (double v : chain.alpha1) mean += v;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  long long close = 0;
  for (double v : chain.alpha1) {
    ss += (v - mean) * (v - mean);
    if (std::abs(v - alpha0) < eps) ++close;
  }
  out.mean = mean;
  out.sd = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) : 0.0;
  out.neighborhood_mass = static_cast<double>(close) / static_cast<double>(m);

  std::vector<double> sorted(chain.alpha1);
  std::sort(sorted.begin(), sorted.end());
  out.quantiles.reserve(probs.size());
  for (double p : probs) {
    const double pos = p * static_cast<double>(m - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, m - 1);
    const double frac = pos - static_cast<double>(lo);
    out.quantiles.push_back(sorted[lo] * (1.0 - frac) + sorted[hi] * frac);
  }
  return out;
}

}  // namespace tailmix
