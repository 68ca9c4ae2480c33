#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "tailmix/levy.hpp"
#include "tailmix/pareto_mixture.hpp"
#include "tailmix/schedule.hpp"

namespace tailmix {

// Secondary-measure prior: finite mixture with 1 + Poisson(mean_extra_atoms)
// atoms and symmetric Dirichlet(dirichlet_a) weights.
struct MfmPrior {
  double mean_extra_atoms = 3.0;
  double dirichlet_a = 1.0;
};

// Secondary-measure prior: normalized random measure with the given intensity.
struct NrmPrior {
  LevySpec spec;
};

// Hyperparameters of the two-block mixture prior. The leading exponent is
// uniform on (0, alpha_bar], the leading weight uniform on [w_low, 1], and
// secondary exponents sit at alpha1 + tau plus a uniform (0, alpha_bar]
// offset, so they stay strictly above alpha1 + tau.
struct ParmixHyper {
  Schedule sched;
  std::variant<MfmPrior, NrmPrior> h_prior = MfmPrior{};
};

// One prior draw. n_atoms is the truncation level for the NRM branch; the
// MFM branch draws its own atom count.
ParetoMixture parmix_prior_sample(const ParmixHyper& hyper, std::size_t n_atoms,
                                  std::uint64_t seed);

struct EnvelopeCheck {
  double h_value;  // alpha1 - x f(x) / survival(x)
  double bound;    // envelope_B * x^-tau
  bool holds;      // |h_value| <= bound
};

// Deviation of the local tail slope from the leading exponent, against the
// schedule envelope. h is computed as a weighted average of exponent
// differences (weights w_i x^-alpha_i, leading factored out), not as a
// difference of two near-equal ratios.
EnvelopeCheck h_envelope(const ParetoMixture& mix, const Schedule& sched, double x);

// Reference model: leading Pareto component plus remainder atoms with
// exponents at or above leading_exponent * (1 + beta).
class TruthSpec {
 public:
  TruthSpec(double leading_weight, double leading_exponent, double beta,
            std::vector<Component> remainder);

  double leading_weight() const { return leading_weight_; }
  double leading_exponent() const { return leading_exponent_; }
  double beta() const { return beta_; }
  const std::vector<Component>& remainder() const { return remainder_; }

  ParetoMixture to_mixture() const;

 private:
  double leading_weight_;
  double leading_exponent_;
  double beta_;
  std::vector<Component> remainder_;
};

// KL divergence of mix from the truth, integral over [1, inf) taken through
// the substitution x = e^t (both sides become exponential mixtures), adaptive
// quadrature to 1e-10 plus a closed-form exponential tail bound past the
// cutoff. Raises DivergentIntegralError if the tail bound cannot be driven
// below tolerance. Result can carry quadrature slack down to -1e-10.
double kl_divergence(const TruthSpec& truth, const ParetoMixture& mix);

}  // namespace tailmix
