#pragma once

#include "rhsharp/domain.hpp"
#include "rhsharp/ext_real.hpp"
#include "rhsharp/exponent.hpp"
#include "rhsharp/roots.hpp"

namespace rhsharp {

/// Which closed form of the Bellman function applies for a given q.
enum class Regime {
  Plus,      ///< q > q*: plus branch (r+, s+)
  Infinite,  ///< q_* <= q <= q*: the function is +inf off the lower boundary
  Minus,     ///< (p-1)/p < q < q_*: minus branch (r-, s-), the Gehring side
};

enum class Branch { Plus, Minus };

/// Immutable (p, q, delta) with the derived exponents computed once.
///
/// `q` may lie in ((p-1)/p, 1) for finite p; for p = inf it must exceed 1.
class Parameters {
public:
  Parameters(ExponentP p, double q, double delta, const RootConfig& cfg = {});

  [[nodiscard]] const ExponentP& p() const { return p_; }
  [[nodiscard]] double q() const { return q_; }
  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] double q_conj() const { return q_conj_; }
  /// p + q' - 1; finite p only.
  [[nodiscard]] double gamma() const;
  [[nodiscard]] double q_star() const { return q_star_; }
  /// Finite p only.
  [[nodiscard]] double q_sub() const;
  [[nodiscard]] const SPair& s() const { return s_; }
  [[nodiscard]] Regime regime() const { return regime_; }
  [[nodiscard]] const RootConfig& root_config() const { return cfg_; }

private:
  ExponentP p_;
  double q_;
  double delta_;
  double q_conj_;
  double gamma_ = 0.0;
  double q_star_;
  double q_sub_ = 1.0;
  SPair s_{};
  Regime regime_;
  RootConfig cfg_;
};

/// Sharp supremum of <w^(1-q')> over weights with averages x, in closed form.
/// +inf in the infinite band, except on the lower boundary.
ExtReal bellman_value(const Parameters& params, DomainPoint x);

/// The same function written as x1^-gamma * x2 * (...). Finite p, off-band only.
/// Used to cross-check bellman_value.
double bellman_value_x2_form(const Parameters& params, DomainPoint x);

/// Supremum of exp(-<log w>): the q -> inf limit of bellman_value^(q-1).
double bellman_infinity_value(const ExponentP& p, double delta, DomainPoint x,
                              const RootConfig& cfg = {});

/// bellman_value^(q-1), computed in log space. Requires the plus regime.
double bellman_limit_check(const Parameters& params, DomainPoint x);

/// Closed-form Hessian quadratic form sum_ij d^2B/dx_i dx_j d_i d_j at an
/// interior point. Finite p, off-band only; boundary points are rejected.
double hessian_form(const Parameters& params, DomainPoint x, double d1, double d2);

/// Direction (d1, d2) with d2 = 1 along which the Hessian form vanishes.
std::pair<double, double> hessian_kernel_direction(const Parameters& params, DomainPoint x);

/// Segment along which the Bellman function is affine: tangent to the upper
/// boundary at (b, (delta b)^p), ending on the lower boundary at r = s.
struct TangentSegment {
  double p = 2.0;
  double delta = 1.0;
  double b = 1.0;
  double r_end = 0.0;  ///< s+ or s-, the parameter value at the lower end
  DomainPoint endpoint_gamma_delta;
  DomainPoint endpoint_gamma_one;

  /// Point with parameter r between 0 and r_end.
  [[nodiscard]] DomainPoint at(double r) const;
};

TangentSegment tangent_segment(double p, double delta, double b, Branch branch = Branch::Plus,
                               const RootConfig& cfg = {});

}  // namespace rhsharp
