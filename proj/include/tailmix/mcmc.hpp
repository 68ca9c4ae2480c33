#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tailmix/parmix.hpp"

namespace tailmix {

struct McmcConfig {
  std::uint64_t n_iter = 4000;
  std::uint64_t burn_in = 1000;
  std::uint64_t thin = 1;
  // Secondary component count. 0 is the pure leading-component restriction:
  // leading weight pinned to 1, no secondary blocks.
  std::size_t truncation = 8;
  double leading_step = 0.35;    // random-walk sd on log alpha1
  double secondary_step = 0.30;  // random-walk sd on secondary exponents
  std::uint64_t seed = 1;

  void validate() const;
};

struct BlockRates {
  double leading = 0.0;
  double secondary = 0.0;
  // fraction of weight updates that fell back to Metropolis after the
  // truncated-Beta rejection budget
  double weight_fallback = 0.0;
};

struct McmcChain {
  // kept states, post burn-in and thinning, aligned across vectors
  std::vector<double> alpha1;
  std::vector<double> w1;
  std::vector<std::vector<double>> secondary_exponents;  // kept x truncation
  std::vector<std::vector<double>> secondary_weights;    // kept x truncation
  BlockRates acceptance;
  McmcConfig config;
  std::uint64_t data_digest = 0;
  std::size_t data_size = 0;
};

// Gibbs-within-Metropolis sampler for the two-block mixture.
// Sweep: allocations (exact categorical), leading exponent (log random walk
// with all secondary exponents shifted rigidly so their offsets survive),
// weights (conditional Dirichlet given counts, leading weight restricted to
// [w_low, 1] by rejection with a Metropolis fallback), each secondary
// exponent (random walk on its support window).
//
// Empty data selects prior mode: every block then targets its prior
// conditional through the same kernel code.
McmcChain run_chain(std::span<const double> data, const ParmixHyper& hyper,
                    const McmcConfig& cfg);

struct PosteriorSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> quantiles;
  double neighborhood_mass = 0.0;  // fraction of kept states with |alpha1 - alpha0| < eps
};

// Summary of the leading-exponent marginal. probs must be nondecreasing in
// [0, 1]; quantiles are linear-interpolation order statistics.
PosteriorSummary posterior_tail_summary(const McmcChain& chain,
                                        std::span<const double> probs,
                                        double alpha0, double eps);

}  // namespace tailmix
