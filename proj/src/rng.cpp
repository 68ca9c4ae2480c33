#include "tailmix/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tailmix {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view unit,
                          std::uint64_t n, std::uint64_t replicate) {
  std::uint64_t h = splitmix64(root ^ fnv1a64(unit));
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ replicate);
  return h;
}

double Rng::uniform01() {
  // 53-bit mantissa, shifted into the open interval
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("Rng::uniform: empty interval");
  return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential() { return -std::log(uniform01()); }

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("Rng::gamma: shape must be positive");
  if (shape < 1.0) {
    // boost to shape + 1 and scale back
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform01(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform01();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

double Rng::student_t(double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("Rng::student_t: dof must be positive");
  const double z = normal();
  const double chi2 = 2.0 * gamma(0.5 * dof);
  return z * std::sqrt(dof / chi2);
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || mean > 60.0)
    throw std::invalid_argument("Rng::poisson: mean must be in [0, 60]");
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = uniform01();
  while (prod > limit) {
    ++k;
    prod *= uniform01();
  }
  return k;
}

std::vector<double> Rng::dirichlet(const std::vector<double>& conc) {
  if (conc.empty()) throw std::invalid_argument("Rng::dirichlet: empty concentration");
  std::vector<double> out(conc.size());
  double total = 0.0;
  for (std::size_t i = 0; i < conc.size(); ++i) {
    out[i] = gamma(conc[i]);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace tailmix
