#include "rhsharp/exponent.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace rhsharp {

ExponentP ExponentP::finite(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("exponent p must satisfy 1 < p < inf, got " + std::to_string(p));
  }
  ExponentP e;
  e.p_ = p;
  e.inf_ = false;
  return e;
}

ExponentP ExponentP::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno != 0) {
    throw DomainError("cannot parse exponent '" + s + "' (expected a number > 1 or 'inf')");
  }
  if (std::isinf(v)) return infinity();
  return finite(v);
}

double ExponentP::value() const {
  if (inf_) throw DomainError("exponent is infinite; a finite p is required here");
  return p_;
}

std::string ExponentP::to_string() const {
  if (inf_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p_);
  return buf;
}

}  // namespace rhsharp
