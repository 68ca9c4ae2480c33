#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tailmix {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view s);

// Per-unit seed for experiment cells. Fixed scheme: fold the unit label
// (FNV-1a), n and replicate into the root through splitmix64, one step per
// ingredient. Stable across runs and thread counts by construction.
std::uint64_t derive_seed(std::uint64_t root, std::string_view unit,
                          std::uint64_t n, std::uint64_t replicate);

// Deterministic generator with explicitly coded samplers. The mt19937_64
// engine is fully specified by the standard; the std distribution objects are
// not, so every transformation lives here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // open interval (0,1), 53-bit resolution
  double uniform01();
  double uniform(double lo, double hi);
  double normal();       // Box-Muller, two uniforms per call, no cached spare
  double exponential();  // rate 1
  double gamma(double shape);  // scale 1, Marsaglia-Tsang
  double beta(double a, double b);
  double student_t(double dof);
  std::uint64_t poisson(double mean);  // mean <= 60
  std::vector<double> dirichlet(const std::vector<double>& conc);

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tailmix
