#include "tailmix/parmix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tailmix/errors.hpp"
#include "tailmix/quadrature.hpp"
#include "tailmix/rng.hpp"

namespace tailmix {

namespace {

void check_schedule(const Schedule& sched) {
  if (sched.n < 3 || !(sched.alpha_bar > 0.0) || !(sched.tau > 0.0) ||
      !(sched.w_low > 0.0) || sched.w_low >= 1.0)
    throw std::invalid_argument("parmix: schedule is not initialized");
}

}  // namespace

ParetoMixture parmix_prior_sample(const ParmixHyper& hyper, std::size_t n_atoms,
                                  std::uint64_t seed) {
  check_schedule(hyper.sched);
  const Schedule& sc = hyper.sched;
  Rng rng(seed);

  const double alpha1 = rng.uniform01() * sc.alpha_bar;
  const double w1 = rng.uniform(sc.w_low, 1.0);
  const double base_lo = alpha1 + sc.tau;

  std::vector<double> offsets;
  std::vector<double> raw_weights;
  if (const MfmPrior* mfm = std::get_if<MfmPrior>(&hyper.h_prior)) {
    const std::size_t count = 1 + rng.poisson(mfm->mean_extra_atoms);
    raw_weights = rng.dirichlet(std::vector<double>(count, mfm->dirichlet_a));
    offsets.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
      offsets.push_back(rng.uniform01() * sc.alpha_bar);
  } else {
    const NrmPrior& nrm = std::get<NrmPrior>(hyper.h_prior);
    const double bar = sc.alpha_bar;
    auto measure = sample_nrm<double>(
        nrm.spec, [bar](Rng& r) { return r.uniform01() * bar; }, n_atoms, rng.raw());
    raw_weights = std::move(measure.weights);
    offsets = std::move(measure.locations);
  }

  std::vector<Component> atoms(offsets.size());
  double partial = 0.0;
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    atoms[j].exponent = base_lo + offsets[j];
    if (j + 1 < offsets.size()) {
      atoms[j].weight = (1.0 - w1) * raw_weights[j];
      partial += atoms[j].weight;
    } else {
      // close the sum exactly; w1 >= 1/2 here so 1 - w1 is exact
      atoms[j].weight = std::max(0.0, (1.0 - w1) - partial);
    }
  }
  return ParetoMixture(w1, alpha1, std::move(atoms));
}

EnvelopeCheck h_envelope(const ParetoMixture& mix, const Schedule& sched, double x) {
  check_schedule(sched);
  if (!(x >= 1.0)) throw std::domain_error("h_envelope: x must be >= 1");
  const double lx = std::log(x);
  const double a1 = mix.leading_exponent();
  // weighted average of (alpha1 - alpha_i) with weights w_i x^-alpha_i,
  // common factor x^-alpha1 removed; denominator keeps the leading w1 term
  double num = 0.0;
  double den = mix.leading_weight();
  for (const Component& c : mix.atoms()) {
    const double scaled = c.weight * std::exp((a1 - c.exponent) * lx);
    num += (a1 - c.exponent) * scaled;
    den += scaled;
  }
  EnvelopeCheck out;
  out.h_value = num / den;
  out.bound = sched.envelope_B * std::exp(-sched.tau * lx);
  out.holds = std::abs(out.h_value) <= out.bound;
  return out;
}

TruthSpec::TruthSpec(double leading_weight, double leading_exponent, double beta,
                     std::vector<Component> remainder)
    : leading_weight_(leading_weight),
      leading_exponent_(leading_exponent),
      beta_(beta),
      remainder_(std::move(remainder)) {
  if (!(leading_weight_ > 0.0) || leading_weight_ > 1.0)
    throw std::invalid_argument("TruthSpec: leading weight must be in (0, 1]");
  if (!(leading_exponent_ > 0.0))
    throw std::invalid_argument("TruthSpec: leading exponent must be positive");
  if (!(beta_ > 0.0)) throw std::invalid_argument("TruthSpec: beta must be positive");
  const double threshold = leading_exponent_ * (1.0 + beta_);
  double total = leading_weight_;
  for (const Component& c : remainder_) {
    if (!(c.weight > 0.0))
      throw std::invalid_argument("TruthSpec: remainder weights must be positive");
    if (c.exponent < threshold * (1.0 - 1e-12))
      throw std::invalid_argument(
          "TruthSpec: remainder exponents must be at least leading * (1 + beta)");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("TruthSpec: weights must sum to 1 within 1e-12");
}

ParetoMixture TruthSpec::to_mixture() const {
  return ParetoMixture(leading_weight_, leading_exponent_, remainder_);
}

namespace {

// exponential-mixture view of a Pareto mixture under t = log x
struct ExpMixture {
  std::vector<double> coef;  // w_i * alpha_i
  std::vector<double> rate;  // alpha_i
  double coef_sum = 0.0;
  double min_rate = 0.0;
  double min_rate_coef = 0.0;  // coefficient attached to the slowest rate

  explicit ExpMixture(const ParetoMixture& mix) {
    auto push = [this](double w, double a) {
      if (w <= 0.0) return;  // zero-weight atoms contribute nothing
      coef.push_back(w * a);
      rate.push_back(a);
      coef_sum += w * a;
    };
    push(mix.leading_weight(), mix.leading_exponent());
    for (const Component& c : mix.atoms()) push(c.weight, c.exponent);
    std::size_t imin = 0;
    for (std::size_t i = 1; i < rate.size(); ++i)
      if (rate[i] < rate[imin]) imin = i;
    min_rate = rate[imin];
    min_rate_coef = coef[imin];
  }

  double log_density(double t) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i)
      acc += coef[i] * std::exp(-(rate[i] - min_rate) * t);
    return -min_rate * t + std::log(acc);
  }

  double density(double t) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i) acc += coef[i] * std::exp(-rate[i] * t);
    return acc;
  }
};

}  // namespace

double kl_divergence(const TruthSpec& truth, const ParetoMixture& mix) {
  const ExpMixture p0(truth.to_mixture());
  const ExpMixture p(mix);

  // |log p0 - log p| <= C + D t for t >= 0, from single-term lower bounds
  // against full-sum upper bounds on both sides
  const double C = std::max(std::abs(std::log(p0.coef_sum / p.min_rate_coef)),
                            std::abs(std::log(p0.min_rate_coef / p.coef_sum)));
  const double D = std::abs(p.min_rate - p0.min_rate);

  const double tol = 1e-10;
  double T = 16.0 / p0.min_rate;
  const auto tail_bound = [&](double t_cut) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p0.coef.size(); ++i) {
      const double r = p0.rate[i];
      acc += p0.coef[i] * std::exp(-r * t_cut) * (C / r + D * (t_cut + 1.0 / r) / r);
    }
    return acc;
  };
  while (tail_bound(T) > 0.5 * tol) {
    T *= 2.0;
    if (T > 1e7)
      throw DivergentIntegralError("kl_divergence: tail bound cannot reach tolerance");
  }

  const auto integrand = [&](double t) {
    const double d0 = p0.density(t);
    if (d0 == 0.0) return 0.0;
    return d0 * (p0.log_density(t) - p.log_density(t));
  };
  const QuadResult q = integrate_gk(integrand, 0.0, T, 0.5 * tol, 4000);
  if (!q.converged)
    throw DivergentIntegralError("kl_divergence: quadrature failed to converge");
  return q.value;
}

}  // namespace tailmix
