#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tailmix/tail_index.hpp"

namespace tailmix {

struct Component {
  double weight;
  double exponent;
};

// Finite mixture of Pareto kernels a x^-(a+1) on [1, inf) with a distinguished
// leading component. Weights must arrive summing to one (tolerance 1e-12);
// nothing is renormalized silently.
class ParetoMixture {
 public:
  ParetoMixture(double leading_weight, double leading_exponent,
                std::vector<Component> atoms = {});

  double leading_weight() const { return leading_weight_; }
  double leading_exponent() const { return leading_exponent_; }
  const std::vector<Component>& atoms() const { return atoms_; }
  std::size_t component_count() const { return 1 + atoms_.size(); }

 private:
  double leading_weight_;
  double leading_exponent_;
  std::vector<Component> atoms_;
};

// min over component exponents; always finite and positive here
TailIndex tail_index_analytic(const ParetoMixture& mix);

double survival(const ParetoMixture& mix, double x);  // x >= 1
double density(const ParetoMixture& mix, double x);   // x >= 1

// survival(x) * x^alpha1, evaluated through exponent differences so large x
// neither overflows nor collapses to 0/0
double slowly_varying_part(const ParetoMixture& mix, double x);

// Inverse-CDF sampling, component chosen by weight. n == 0 returns an empty
// dataset. Deterministic for a given seed.
std::vector<double> sample(const ParetoMixture& mix, std::size_t n, std::uint64_t seed);

}  // namespace tailmix
