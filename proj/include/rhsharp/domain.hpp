#pragma once

#include "rhsharp/exponent.hpp"

namespace rhsharp {

/// Point of the Bellman domain: (<w>, <w^p>) for finite p, (<w>, ess sup w) for p = inf.
struct DomainPoint {
  double x1 = 1.0;
  double x2 = 1.0;
};

/// Relative tolerance within which a point counts as lying on a boundary curve.
inline constexpr double kBoundaryRelTol = 1e-12;

/// Where a point sits relative to the two boundary curves.
enum class DomainLocation { LowerBoundary, Interior, UpperBoundary };

/// Throws DomainError naming the violated inequality when x is outside the
/// domain for (p, delta). Points within kBoundaryRelTol of a boundary are
/// accepted and classified as on it.
DomainLocation classify_point(const ExponentP& p, double delta, DomainPoint x);

/// x2 / (delta*x1)^p (or x2/(delta*x1) for p = inf), clamped into [delta^-p, 1].
double domain_ratio(const ExponentP& p, double delta, DomainPoint x);

}  // namespace rhsharp
