#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "rhsharp/domain.hpp"
#include "rhsharp/roots.hpp"

namespace rhsharp::testing {

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Fixed-seed generator so failures reproduce.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Bisection run to the last bit, so B is smooth enough to difference.
inline RootConfig full_precision() {
  RootConfig cfg;
  cfg.rel_tol = 1e-16;
  cfg.abs_tol = 1e-300;
  return cfg;
}

/// Point strictly inside the finite-p domain: x2 = x1^p * delta^(p*f), f in (0.02, 0.98).
inline DomainPoint interior_point(double p, double delta, double x1, double f) {
  return {x1, std::pow(x1, p) * std::pow(delta, p * f)};
}

}  // namespace rhsharp::testing
