#pragma once

#include <string>
#include <string_view>

#include "rhsharp/errors.hpp"

namespace rhsharp {

/// Integrability exponent p: a finite real > 1, or infinity.
class ExponentP {
public:
  static ExponentP finite(double p);
  static ExponentP infinity() { return ExponentP(); }

  /// Accepts a decimal number > 1 or the literal "inf".
  static ExponentP parse(std::string_view text);

  [[nodiscard]] bool is_inf() const { return inf_; }
  [[nodiscard]] bool is_finite() const { return !inf_; }

  /// Throws DomainError when called on infinity.
  [[nodiscard]] double value() const;

  [[nodiscard]] std::string to_string() const;

private:
  ExponentP() = default;
  double p_ = 0.0;
  bool inf_ = true;
};

}  // namespace rhsharp
