#pragma once

#include "rhsharp/ext_real.hpp"
#include "rhsharp/roots.hpp"

namespace rhsharp {

/// A_q upper bound for RH_p^delta weights on an n-dimensional cube.
///
/// These bounds are not sharp. They come from bounding the ratio of averages
/// over the 2^n dyadic children (y), enlarging delta to an epsilon whose
/// domain contains every splitting chord, and reusing the one-dimensional
/// constant at epsilon.
struct NDimBound {
  int n = 2;
  double y = 1.0;
  double epsilon = 1.0;
  ExtReal constant{1.0};
};

/// Largest delta for which the child-ratio bound exists: (2^n/(2^n - 1))^(1/p').
double delta_threshold(double p, int n);

/// Root y >= 1 of (2 + 2^n (delta^-p' - 1))^(p-1) = (1+y)^p / (1+y^p).
double ratio_bound_y(double p, int n, double delta, const RootConfig& cfg = {});

/// (1+y)^p/(1+y^p) - the right side of the y equation; decreasing on y >= 1.
double ratio_bound_rhs(double p, double y);

/// f_p(y) = (y^2 - y^(2-2p))/(y^2 - 1), with f_p(1) = p.
double f_p(double p, double y);

/// delta * f/p * ((f-1)/(p-1))^((1-p)/p) at f = f_p(y(delta)); always >= delta.
double epsilon_bound(double p, int n, double delta, const RootConfig& cfg = {});

NDimBound ndim_aq_bound(double p, double q, int n, double delta, const RootConfig& cfg = {});

}  // namespace rhsharp
