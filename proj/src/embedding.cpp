#include "rhsharp/embedding.hpp"

#include <cmath>
#include <string>

namespace rhsharp {

namespace {

constexpr double kCriticalGuard = 1e-12;

void require_delta(double delta, const char* what) {
  if (!(delta >= 1.0) || !std::isfinite(delta)) {
    throw DomainError(std::string(what) + ": requires delta >= 1");
  }
}

}  // namespace

ExtReal aq_formula(double q, double qs) {
  if (!(q > qs * (1.0 + kCriticalGuard))) return ExtReal::infinity();
  const double lc = -std::log(qs) + (q - 1.0) * (std::log(q - 1.0) - std::log(q - qs));
  return ExtReal::from_double(std::exp(lc));
}

EmbeddingResult aq_constant(const ExponentP& p, double q, double delta, const RootConfig& cfg) {
  require_delta(delta, "aq_constant");
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("aq_constant: requires finite q > 1");
  if (delta == 1.0) return {ExtReal(1.0), ExtReal(1.0)};
  const double qs = q_star(p, delta, cfg);
  return {aq_formula(q, qs), ExtReal(qs)};
}

EmbeddingResult ainf_constant(const ExponentP& p, double delta, const RootConfig& cfg) {
  require_delta(delta, "ainf_constant");
  if (delta == 1.0) return {ExtReal(1.0), ExtReal(1.0)};
  const double qs = q_star(p, delta, cfg);
  return {ExtReal::from_double(std::exp(qs - 1.0 - std::log(qs))), ExtReal(qs)};
}

EmbeddingResult rht_constant(double p, double t, double delta, const RootConfig& cfg) {
  require_delta(delta, "rht_constant");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("rht_constant: requires finite p > 1");
  if (!(t >= p)) throw DomainError("rht_constant: requires t >= p");
  if (delta == 1.0) return {ExtReal(1.0), ExtReal::infinity()};

  // With e = 1 - p/t*: t*/(t* - t) = p/(p - t + t e) and (t* - 1)/t* = (p - 1 + e)/p,
  // which keeps t* - t accurate when t* is within rounding of p. The guard
  // band is taken relative to t e, the scale of t* - p.
  const double lg = log_critical_gap(p, delta, cfg);
  const double e = std::exp(lg);
  const ExtReal ts_ext(-p / std::expm1(lg));
  const double slack = (p - t) + t * e;
  if (!(slack > kCriticalGuard * t * e)) return {ExtReal::infinity(), ts_ext};
  const double lc = std::log((p - 1.0 + e) / p) + (std::log(p) - std::log(slack)) / t;
  return {ExtReal::from_double(std::exp(lc)), ts_ext};
}

}  // namespace rhsharp
