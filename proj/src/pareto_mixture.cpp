#include "tailmix/pareto_mixture.hpp"

#include <cmath>
#include <stdexcept>

#include "tailmix/rng.hpp"

namespace tailmix {

ParetoMixture::ParetoMixture(double leading_weight, double leading_exponent,
                             std::vector<Component> atoms)
    : leading_weight_(leading_weight),
      leading_exponent_(leading_exponent),
      atoms_(std::move(atoms)) {
  if (!(leading_weight_ > 0.0) || leading_weight_ > 1.0)
    throw std::invalid_argument("ParetoMixture: leading weight must be in (0, 1]");
  if (!(leading_exponent_ > 0.0))
    throw std::invalid_argument("ParetoMixture: leading exponent must be positive");
  double total = leading_weight_;
  for (const Component& c : atoms_) {
    if (!(c.weight >= 0.0)) throw std::invalid_argument("ParetoMixture: negative atom weight");
    if (!(c.exponent > 0.0)) throw std::invalid_argument("ParetoMixture: atom exponent must be positive");
    total += c.weight;
  }
  // weights are the caller's contract; off-by-more-than-tolerance is an error,
  // not a renormalization
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("ParetoMixture: weights must sum to 1 within 1e-12");
}

TailIndex tail_index_analytic(const ParetoMixture& mix) {
  double min_exp = mix.leading_exponent();
  for (const Component& c : mix.atoms())
    if (c.exponent < min_exp) min_exp = c.exponent;
  return TailIndex::finite(min_exp);
}

double survival(const ParetoMixture& mix, double x) {
  if (!(x >= 1.0)) throw std::domain_error("survival: x must be >= 1");
  double total = mix.leading_weight() * std::pow(x, -mix.leading_exponent());
  for (const Component& c : mix.atoms()) total += c.weight * std::pow(x, -c.exponent);
  return total;
}

double density(const ParetoMixture& mix, double x) {
  if (!(x >= 1.0)) throw std::domain_error("density: x must be >= 1");
  double total = mix.leading_weight() * mix.leading_exponent() *
                 std::pow(x, -(mix.leading_exponent() + 1.0));
  for (const Component& c : mix.atoms())
    total += c.weight * c.exponent * std::pow(x, -(c.exponent + 1.0));
  return total;
}

double slowly_varying_part(const ParetoMixture& mix, double x) {
  if (!(x >= 1.0)) throw std::domain_error("slowly_varying_part: x must be >= 1");
  const double lx = std::log(x);
  const double a1 = mix.leading_exponent();
  double total = mix.leading_weight();
  for (const Component& c : mix.atoms())
    total += c.weight * std::exp((a1 - c.exponent) * lx);
  return total;
}

std::vector<double> sample(const ParetoMixture& mix, std::size_t n, std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(n);
  Rng rng(seed);
  const std::size_t k = mix.atoms().size();
  for (std::size_t i = 0; i < n; ++i) {
    double pick = rng.uniform01();
    double exponent = mix.leading_exponent();
    if (pick >= mix.leading_weight()) {
      pick -= mix.leading_weight();
      for (std::size_t j = 0; j < k; ++j) {
        const Component& c = mix.atoms()[j];
        if (pick < c.weight || j + 1 == k) {
          exponent = c.exponent;
          break;
        }
        pick -= c.weight;
      }
    }
    out.push_back(std::pow(rng.uniform01(), -1.0 / exponent));
  }
  return out;
}

}  // namespace tailmix
