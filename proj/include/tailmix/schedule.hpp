#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tailmix {

// Sample-size dependent support bounds for the two-block mixture prior.
struct Schedule {
  std::uint64_t n = 0;
  double alpha_bar = 0.0;   // upper bound for the leading exponent
  double tau = 0.0;         // gap between leading and secondary exponents
  double w_low = 0.0;       // lower bound for the leading weight
  double s = 0.0;           // threshold exponent for the count-ratio estimator
  double envelope_B = 0.0;  // 2 alpha_bar / w_low
};

// alpha_bar = sqrt(log n), tau = (log n)^-1/4, w_low = (log n)^-1/5,
// s = (log n)^1/3; natural logs throughout. Requires n >= 3 so that
// w_low < 1. When warnings is non-null, any finite-n ordering violation is
// appended there.
Schedule default_schedule(std::uint64_t n, std::vector<std::string>* warnings = nullptr);

// Finite-n check of the two asymptotic orderings the schedule is built for:
// w_low * tau > alpha_bar / log n and log(alpha_bar / w_low) < tau log n / alpha_bar.
// Returns one message per violated relation.
std::vector<std::string> schedule_ordering_violations(const Schedule& sched);

// Smallest n on a decade grid [1e3, 1e9] where both orderings hold.
// Returns 0 when none does.
std::uint64_t smallest_ordering_n();

}  // namespace tailmix
