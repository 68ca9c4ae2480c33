#include "tailmix/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace tailmix {

Schedule default_schedule(std::uint64_t n, std::vector<std::string>* warnings) {
  if (n < 3) throw std::invalid_argument("default_schedule: n must be at least 3");
  const double L = std::log(static_cast<double>(n));
  Schedule sched;
  sched.n = n;
  sched.alpha_bar = std::sqrt(L);
  sched.tau = std::pow(L, -0.25);
  sched.w_low = std::pow(L, -0.2);
  sched.s = std::cbrt(L);
  sched.envelope_B = 2.0 * sched.alpha_bar / sched.w_low;
  if (warnings) {
    auto v = schedule_ordering_violations(sched);
    warnings->insert(warnings->end(), v.begin(), v.end());
  }
  return sched;
}

std::vector<std::string> schedule_ordering_violations(const Schedule& sched) {
  std::vector<std::string> out;
  const double L = std::log(static_cast<double>(sched.n));
  if (!(sched.w_low * sched.tau > sched.alpha_bar / L))
    out.push_back("w_low * tau <= alpha_bar / log n at n = " + std::to_string(sched.n));
  if (!(std::log(sched.alpha_bar / sched.w_low) < sched.tau * L / sched.alpha_bar))
    out.push_back("log(alpha_bar / w_low) >= tau log n / alpha_bar at n = " +
                  std::to_string(sched.n));
  return out;
}

std::uint64_t smallest_ordering_n() {
  for (std::uint64_t n = 1000; n <= 1000000000ULL; n *= 10) {
    if (schedule_ordering_violations(default_schedule(n)).empty()) return n;
  }
  return 0;
}

}  // namespace tailmix
