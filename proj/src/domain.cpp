#include "rhsharp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rhsharp {

namespace {

// log of the lower and upper boundary values of x2 at x1.
struct LogBounds {
  double lower;
  double upper;
};

LogBounds log_bounds(const ExponentP& p, double delta, double x1) {
  if (p.is_inf()) return {std::log(x1), std::log(delta * x1)};
  const double pv = p.value();
  return {pv * std::log(x1), pv * std::log(delta * x1)};
}

}  // namespace

DomainLocation classify_point(const ExponentP& p, double delta, DomainPoint x) {
  if (!(delta >= 1.0)) throw DomainError("delta must be >= 1");
  if (!(x.x1 > 0.0) || !std::isfinite(x.x1)) throw DomainError("domain point requires x1 > 0");
  if (!(x.x2 > 0.0) || !std::isfinite(x.x2)) throw DomainError("domain point requires x2 > 0");

  const auto [lo, hi] = log_bounds(p, delta, x.x1);
  const double lx2 = std::log(x.x2);
  // Relative tolerance on x2 is an absolute tolerance on log x2.
  const double tol = kBoundaryRelTol;
  const char* lower_name = p.is_inf() ? "x2 >= x1" : "x2 >= x1^p";
  const char* upper_name = p.is_inf() ? "x2 <= delta*x1" : "x2 <= (delta*x1)^p";
  if (lx2 < lo - tol) throw DomainError(std::string("point outside domain: violates ") + lower_name);
  if (lx2 > hi + tol) throw DomainError(std::string("point outside domain: violates ") + upper_name);
  if (lx2 <= lo + tol) return DomainLocation::LowerBoundary;
  if (lx2 >= hi - tol) return DomainLocation::UpperBoundary;
  return DomainLocation::Interior;
}

double domain_ratio(const ExponentP& p, double delta, DomainPoint x) {
  classify_point(p, delta, x);
  const double pv = p.is_inf() ? 1.0 : p.value();
  const double lt = std::log(x.x2) - pv * std::log(delta * x.x1);
  const double lmin = -pv * std::log(delta);
  return std::exp(std::clamp(lt, lmin, 0.0));
}

}  // namespace rhsharp
