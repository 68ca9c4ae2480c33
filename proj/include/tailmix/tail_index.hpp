#pragma once

#include <limits>

namespace tailmix {

// Extended nonnegative real in [0, +inf] with exact zero and infinity states,
// so regime-table matching never leans on floating-point infinity semantics.
class TailIndex {
 public:
  static TailIndex zero() { return TailIndex(Kind::Zero, 0.0); }
  static TailIndex infinity() { return TailIndex(Kind::Inf, 0.0); }
  static TailIndex finite(double v);  // v >= 0; v == 0 collapses to the zero state

  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_infinite() const { return kind_ == Kind::Inf; }
  // true for zero as well; "finite" means the value is a real number
  bool is_finite() const { return kind_ != Kind::Inf; }

  double value() const {
    if (kind_ == Kind::Inf) return std::numeric_limits<double>::infinity();
    return v_;
  }

  friend bool operator==(const TailIndex& a, const TailIndex& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::Finite) return a.v_ == b.v_;
    return true;
  }
  friend bool operator!=(const TailIndex& a, const TailIndex& b) { return !(a == b); }

 private:
  enum class Kind { Zero, Finite, Inf };
  TailIndex(Kind k, double v) : kind_(k), v_(v) {}
  Kind kind_;
  double v_;
};

}  // namespace tailmix
