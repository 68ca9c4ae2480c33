#include "tailmix/tail_index.hpp"

#include <cmath>
#include <stdexcept>

namespace tailmix {

TailIndex TailIndex::finite(double v) {
  if (std::isnan(v) || v < 0.0)
    throw std::invalid_argument("TailIndex::finite: value must be a nonnegative real");
  if (std::isinf(v)) return infinity();
  if (v == 0.0) return zero();
  return TailIndex(Kind::Finite, v);
}

}  // namespace tailmix
