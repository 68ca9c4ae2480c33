#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "tailmix/schedule.hpp"

namespace tailmix {

struct ExceedanceCounts {
  long long at_s = 0;         // observations above e^s
  long long at_s_plus_1 = 0;  // observations above e^(s+1)
};

// log of the exceedance-count ratio over thresholds e^s and e^(s+1).
// An empty upper count leaves the estimator undefined (empty optional,
// never NaN). Empty data is a domain error.
std::optional<double> carpentier_kim(std::span<const double> data, double s,
                                     ExceedanceCounts* counts = nullptr);

// Inverse mean log spacing over the k largest values:
//   1 / ( (1/k) sum_{i<=k} log X_(i) - log X_(k+1) ),
// order statistics descending. Requires 1 <= k < data.size() and strictly
// positive data.
double hill(std::span<const double> data, std::size_t k);

// min(1, 2 exp(-n p eps^2 / 144))
double hoeffding_type_bound(double n, double p, double eps);

struct TestOutcome {
  std::optional<double> statistic;
  bool reject = false;
  bool not_defined = false;  // estimator was undefined; counted as a rejection
  double threshold = 0.0;    // eps / 2
  ExceedanceCounts counts;
};

// Rejects when the count-ratio estimate at the schedule's s differs from
// alpha0 by at least eps/2.
TestOutcome uniform_test(std::span<const double> data, double alpha0, double eps,
                         const Schedule& sched);

}  // namespace tailmix
