#pragma once

#include <functional>
#include <optional>

#include "tailmix/tail_index.hpp"

namespace tailmix {

enum class Provenance { AnalyticInf, MomentTable, Estimated };

struct TailClassification {
  TailIndex index;
  Provenance provenance;
  std::optional<int> table_case;  // row 1..4 when provenance == MomentTable
};

// Tail index of a location-scale kernel mixture from the moment table.
// mu_tail and sigma_tail must be exactly zero or infinity (thin mixing
// distribution with all moments, or one with no finite moments); anything in
// between raises UnsupportedRegimeError. kernel_tail is the kernel's own
// index and may be any extended value.
TailClassification classify_mixture_tail(TailIndex mu_tail, TailIndex sigma_tail,
                                         TailIndex kernel_tail);

// Declared asymptotic regime of a base measure's survival function.
// The conditions this feeds are asymptotic order statements between survival
// functions, which are not decidable from samples or from a numeric handle,
// so classification consumes declared regimes only.
class TailDescriptor {
 public:
  enum class Regime {
    Poly,              // survival comparable to x^-alpha
    SuperHeavyLogLog,  // dominates loglog(x) / log(x)
    SubLogDelta,       // below 1 / (log(x) loglog(x)^delta), delta > 1
    SuperPoly,         // dominates x^-d for every d > 0
    SubPoly,           // below x^-d for every d > 0
    Explicit,          // a concrete survival handle, deliberately unclassified
  };

  static TailDescriptor poly(double alpha);
  static TailDescriptor super_heavy_loglog();
  static TailDescriptor sub_log_delta(double delta);
  static TailDescriptor super_poly();
  static TailDescriptor sub_poly();
  static TailDescriptor explicit_survival(std::function<double(double)> survival);

  Regime regime() const { return regime_; }
  double param() const { return param_; }  // alpha or delta where applicable
  double survival(double x) const;         // Explicit regime only

 private:
  TailDescriptor(Regime r, double p) : regime_(r), param_(p) {}
  Regime regime_;
  double param_ = 0.0;
  std::function<double(double)> survival_;
};

enum class PriorKind { Dp, Nggp };

enum class BaseCase { CaseI, CaseII, Uncovered };

// Which concentration regime a base-measure tail falls into under the given
// prior; Uncovered marks the gap between the two sufficient conditions.
BaseCase classify_base_measure(const TailDescriptor& desc, PriorKind prior);

}  // namespace tailmix
