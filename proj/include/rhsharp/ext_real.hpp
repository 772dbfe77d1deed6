#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rhsharp {

/// Extended nonnegative real: a finite value or +inf.
///
/// Infinity is its own state rather than a large double, so callers have to
/// ask `is_inf()` before reading `value()`.
class ExtReal {
public:
  constexpr ExtReal() = default;
  constexpr explicit ExtReal(double v) : value_(v) {}

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  /// Maps IEEE +inf to the infinite state; NaN is rejected.
  static ExtReal from_double(double v) {
    if (std::isnan(v)) throw std::domain_error("ExtReal: NaN is not an extended real");
    if (v == std::numeric_limits<double>::infinity()) return infinity();
    return ExtReal(v);
  }

  [[nodiscard]] constexpr bool is_inf() const { return inf_; }
  [[nodiscard]] constexpr bool is_finite() const { return !inf_; }

  [[nodiscard]] double value() const {
    if (inf_) throw std::logic_error("ExtReal: value() called on +inf");
    return value_;
  }

  /// +inf maps to IEEE infinity; for printing and comparisons only.
  [[nodiscard]] constexpr double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }

  friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend constexpr bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend constexpr bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
    if (x.inf_) return os << "inf";
    return os << x.value_;
  }

private:
  double value_ = 0.0;
  bool inf_ = false;
};

}  // namespace rhsharp
