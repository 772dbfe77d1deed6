#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rhsharp/domain.hpp"
#include "rhsharp/errors.hpp"
#include "rhsharp/ext_real.hpp"
#include "rhsharp/exponent.hpp"

namespace rhsharp {

struct RootConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iter = 200;

  /// Throws DomainError unless all three fields are positive.
  void validate() const;
};

/// The two branch values of the inverse map at t = delta^-p.
struct SPair {
  double s_minus = 0.0;  ///< <= 0
  double s_plus = 0.0;   ///< in [0, 1/p)
};

/// log of (1 - p u)^(p-1) / (1 - (p-1) u)^p, the map inverted by u_plus/u_minus.
/// Defined for u < 1/p; returns -inf at u = 1/p.
double log_branch_map(double p, double u);

/// Inverse of the branch map on [0, 1/p]: strictly decreasing, so u_plus(p, 1) = 0
/// and u_plus(p, 0) = 1/p.
double u_plus(double p, double t, const RootConfig& cfg = {});

/// Inverse of the branch map on (-inf, 0]. t = 0 is refused (the branch
/// value there is -inf).
double u_minus(double p, double t, const RootConfig& cfg = {});

SPair s_pair(double p, double delta, const RootConfig& cfg = {});

/// (r_minus, r_plus) at t = x2/(delta*x1)^p. x must lie in the domain.
std::pair<double, double> r_pair(double p, double delta, DomainPoint x,
                                 const RootConfig& cfg = {});

/// Critical A_q exponent: the root > 1 of ((x/delta)^p - 1)/(x - 1) = p.
/// Returns delta for p = inf and exactly 1 at delta = 1.
double q_star(const ExponentP& p, double delta, const RootConfig& cfg = {});

/// The companion root of the same equation in ((p-1)/p, 1).
double q_sub(double p, double delta, const RootConfig& cfg = {});

/// log(p q_sub - (p - 1)) = log(1 - p/t_star), in (-inf, 0]; 0 at delta = 1.
/// q_sub and t_star are both derived from it. For large p log(delta) the
/// gap underflows double precision relative to q_sub, so callers needing
/// t_star - p should start from this value.
double log_critical_gap(double p, double delta, const RootConfig& cfg = {});

/// Gehring threshold: root > p of (delta x/(x-1))^p (x-p)/x = 1; +inf at delta = 1.
ExtReal t_star(double p, double delta, const RootConfig& cfg = {});

namespace detail {

/// Bisection on [lo, hi]. `f` must change sign across the bracket; the
/// returned point is within max(abs_tol, rel_tol*|x|) of a sign change.
template <class F>
double bisect(F&& f, double lo, double hi, const RootConfig& cfg, const char* what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw IterationError(std::string(what) + ": bracket has no sign change");
  }
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(mid));
    if (hi - lo <= tol || mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw IterationError(std::string(what) + ": no convergence within max_iter");
}

/// Doubles `width` from `base` in direction `dir` until `f` changes sign
/// relative to f(base); returns the far end. Gives up after 2^60.
template <class F>
double expand_bracket(F&& f, double base, double width, double dir, const char* what) {
  const bool base_neg = f(base) < 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double far = base + dir * width;
    if ((f(far) < 0.0) != base_neg) return far;
    width *= 2.0;
  }
  throw IterationError(std::string(what) + ": bracket expansion exceeded 2^60");
}

}  // namespace detail
}  // namespace rhsharp
