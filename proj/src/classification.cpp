#include "tailmix/classification.hpp"

#include <stdexcept>

#include "tailmix/errors.hpp"

namespace tailmix {

TailClassification classify_mixture_tail(TailIndex mu_tail, TailIndex sigma_tail,
                                         TailIndex kernel_tail) {
  const auto extreme = [](const TailIndex& t) { return t.is_zero() || t.is_infinite(); };
  if (!extreme(mu_tail) || !extreme(sigma_tail))
    throw UnsupportedRegimeError(
        "classify_mixture_tail: mixing tails must be exactly zero or infinite");

  // (mu, sigma) rows: (0,0), (0,inf), (inf,0) give index 0; (inf,inf) passes
  // the kernel index through.
  int row;
  TailIndex idx = TailIndex::zero();
  if (mu_tail.is_zero() && sigma_tail.is_zero()) {
    row = 1;
  } else if (mu_tail.is_zero()) {
    row = 2;
  } else if (sigma_tail.is_zero()) {
    row = 3;
  } else {
    row = 4;
    idx = kernel_tail;
  }
  return TailClassification{idx, Provenance::MomentTable, row};
}

TailDescriptor TailDescriptor::poly(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("TailDescriptor::poly: alpha must be positive");
  return TailDescriptor(Regime::Poly, alpha);
}

TailDescriptor TailDescriptor::super_heavy_loglog() {
  return TailDescriptor(Regime::SuperHeavyLogLog, 0.0);
}

TailDescriptor TailDescriptor::sub_log_delta(double delta) {
  if (!(delta > 1.0))
    throw std::invalid_argument("TailDescriptor::sub_log_delta: delta must exceed 1");
  return TailDescriptor(Regime::SubLogDelta, delta);
}

TailDescriptor TailDescriptor::super_poly() { return TailDescriptor(Regime::SuperPoly, 0.0); }

TailDescriptor TailDescriptor::sub_poly() { return TailDescriptor(Regime::SubPoly, 0.0); }

TailDescriptor TailDescriptor::explicit_survival(std::function<double(double)> survival) {
  if (!survival)
    throw std::invalid_argument("TailDescriptor::explicit_survival: null handle");
  TailDescriptor d(Regime::Explicit, 0.0);
  d.survival_ = std::move(survival);
  return d;
}

double TailDescriptor::survival(double x) const {
  if (regime_ != Regime::Explicit)
    throw std::logic_error("TailDescriptor::survival: only the Explicit regime has a handle");
  return survival_(x);
}

BaseCase classify_base_measure(const TailDescriptor& desc, PriorKind prior) {
  using R = TailDescriptor::Regime;
  switch (desc.regime()) {
    case R::SuperHeavyLogLog:
      // dominates loglog/log, hence also every power; first condition of
      // either prior
      return BaseCase::CaseI;
    case R::SubPoly:
      // below every power, hence below the log-window threshold as well
      return BaseCase::CaseII;
    case R::Poly:
      // below the log window for the gamma branch; squarely in the gap for
      // the generalized-gamma branch, whose conditions bracket powers
      return prior == PriorKind::Dp ? BaseCase::CaseII : BaseCase::Uncovered;
    case R::SubLogDelta:
      return prior == PriorKind::Dp ? BaseCase::CaseII : BaseCase::Uncovered;
    case R::SuperPoly:
      // heavier than every power decides the generalized-gamma branch, but a
      // super-polynomial tail can sit on either side of the log window
      return prior == PriorKind::Nggp ? BaseCase::CaseI : BaseCase::Uncovered;
    case R::Explicit:
      // a numeric handle cannot certify an asymptotic order statement
      return BaseCase::Uncovered;
  }
  throw std::logic_error("classify_base_measure: unreachable");
}

}  // namespace tailmix
