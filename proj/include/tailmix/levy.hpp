#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tailmix/rng.hpp"

namespace tailmix {

// Intensity family a / Gamma(1-kappa) * v^-(kappa+1) e^(-tau v) dv.
// kappa = 0 is the gamma-process branch and then needs tau > 0; tau != 1
// there is a pure rescaling of jumps and leaves normalized weights alone.
struct LevySpec {
  double a = 1.0;
  double kappa = 0.0;
  double tau = 1.0;

  void validate() const;
};

// kappa = 0: a log(1 + s/tau). kappa > 0: (a/kappa) ((s+tau)^kappa - tau^kappa).
// Evaluated through log1p/expm1 so small s does not cancel.
double laplace_exponent(const LevySpec& spec, double s);  // s >= 0

// Exact inverse of the above on u >= 0.
double inverse_laplace_exponent(const LevySpec& spec, double u);

// log of loglog(1/x) / Psi^-1(gamma_coef * loglog(1/x) / x) for x in
// (0, e^-e). Stays finite far past the point where the plain value
// underflows.
double log_h_gamma(const LevySpec& spec, double gamma_coef, double x);

// exp(log_h_gamma); positive in exact arithmetic, may underflow to 0 at
// extreme x.
double h_gamma(const LevySpec& spec, double gamma_coef, double x);

template <class Loc>
struct DiscreteMeasure {
  std::vector<double> weights;  // generation order, normalized to sum 1
  std::vector<Loc> locations;
  double truncation_error = 0.0;
};

namespace detail {

// Expected residual stick mass past the truncation point. An average, not a
// per-realization guarantee; individual draws land above it regularly.
double dp_residual_bound(double a, std::size_t n_atoms);
double nggp_residual_bound(const LevySpec& spec, double last_jump, double total_mass);
double stable_inverse_tail(const LevySpec& spec, double level);

}  // namespace detail

// Random normalized measure, truncated at n_atoms.
//
// kappa = 0: stick breaking with Beta(1, a) sticks, atoms in generation
// order. kappa > 0: jumps of the tau = 0 stable process in decreasing order
// (closed-form inverse tail), thinned by e^(-tau v). Either way atom i
// consumes a fixed draw pattern, so deepening the truncation with the same
// seed extends the atom list without reshuffling the prefix.
template <class Loc>
DiscreteMeasure<Loc> sample_nrm(const LevySpec& spec,
                                const std::function<Loc(Rng&)>& base,
                                std::size_t n_atoms, std::uint64_t seed) {
  spec.validate();
  if (n_atoms == 0) throw std::invalid_argument("sample_nrm: n_atoms must be positive");
  if (!base) throw std::invalid_argument("sample_nrm: null base sampler");

  DiscreteMeasure<Loc> out;
  out.weights.reserve(n_atoms);
  out.locations.reserve(n_atoms);
  Rng rng(seed);

  if (spec.kappa == 0.0) {
    double remaining = 1.0;
    for (std::size_t i = 0; i < n_atoms; ++i) {
      // Beta(1, a) via inverse CDF
      const double v = 1.0 - std::pow(rng.uniform01(), 1.0 / spec.a);
      out.weights.push_back(v * remaining);
      out.locations.push_back(base(rng));
      remaining *= 1.0 - v;
    }
    double total = 0.0;
    for (double w : out.weights) total += w;
    for (double& w : out.weights) w /= total;
    out.truncation_error = detail::dp_residual_bound(spec.a, n_atoms);
    return out;
  }

  double arrival = 0.0;
  double total = 0.0;
  double last_jump = 0.0;
  while (out.weights.size() < n_atoms) {
    arrival += rng.exponential();
    const double jump = detail::stable_inverse_tail(spec, arrival);
    const double u = rng.uniform01();
    if (spec.tau > 0.0 && u > std::exp(-spec.tau * jump)) continue;
    out.weights.push_back(jump);
    out.locations.push_back(base(rng));
    total += jump;
    last_jump = jump;
  }
  for (double& w : out.weights) w /= total;
  out.truncation_error = detail::nggp_residual_bound(spec, last_jump, total);
  return out;
}

}  // namespace tailmix
