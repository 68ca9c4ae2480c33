#include "tailmix/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tailmix {

std::optional<double> carpentier_kim(std::span<const double> data, double s,
                                     ExceedanceCounts* counts) {
  if (data.empty()) throw std::domain_error("carpentier_kim: empty dataset");
  if (!(s > 0.0)) throw std::domain_error("carpentier_kim: s must be positive");
  const double lo = std::exp(s);
  const double hi = std::exp(s + 1.0);
  long long m_lo = 0;
  long long m_hi = 0;
  for (double x : data) {
    if (x > lo) ++m_lo;
    if (x > hi) ++m_hi;
  }
  if (counts) *counts = {m_lo, m_hi};
  if (m_hi == 0) return std::nullopt;
  return std::log(static_cast<double>(m_lo) / static_cast<double>(m_hi));
}

double hill(std::span<const double> data, std::size_t k) {
  if (k < 1 || k >= data.size())
    throw std::domain_error("hill: k must satisfy 1 <= k < data size");
  for (double x : data)
    if (!(x > 0.0)) throw std::domain_error("hill: data must be strictly positive");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double mean_log = 0.0;
  for (std::size_t i = 0; i < k; ++i) mean_log += std::log(sorted[i]);
  mean_log /= static_cast<double>(k);
  return 1.0 / (mean_log - std::log(sorted[k]));
}

double hoeffding_type_bound(double n, double p, double eps) {
  if (!(n >= 0.0) || !(p >= 0.0) || p > 1.0 || !(eps >= 0.0))
    throw std::domain_error("hoeffding_type_bound: invalid arguments");
  const double b = 2.0 * std::exp(-n * p * eps * eps / 144.0);
  return b < 1.0 ? b : 1.0;
}

TestOutcome uniform_test(std::span<const double> data, double alpha0, double eps,
                         const Schedule& sched) {
  if (!(alpha0 > 0.0)) throw std::domain_error("uniform_test: alpha0 must be positive");
  if (!(eps > 0.0)) throw std::domain_error("uniform_test: eps must be positive");
  TestOutcome out;
  out.threshold = eps / 2.0;
  out.statistic = carpentier_kim(data, sched.s, &out.counts);
  if (!out.statistic) {
    out.not_defined = true;
    out.reject = true;
    return out;
  }
  out.reject = std::abs(*out.statistic - alpha0) >= out.threshold;
  return out;
}

}  // namespace tailmix
