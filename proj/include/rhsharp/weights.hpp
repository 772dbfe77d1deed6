#pragma once

#include <variant>

#include "rhsharp/bellman.hpp"
#include "rhsharp/domain.hpp"
#include "rhsharp/ext_real.hpp"
#include "rhsharp/exponent.hpp"
#include "rhsharp/roots.hpp"

namespace rhsharp {

/// w(t) = c (t/a)^nu on [0, a], c on [a, 1]. All averages are over
/// subintervals of [0, 1].
class PowerWeight {
public:
  PowerWeight(double c, double a, double nu);

  static PowerWeight constant(double c) { return {c, 1.0, 0.0}; }

  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double nu() const { return nu_; }

  /// Pointwise value; +inf at t = 0 when nu < 0.
  [[nodiscard]] double operator()(double t) const;

private:
  double c_;
  double a_;
  double nu_;
};

namespace functional {
struct Aq {
  double q;
};
struct AInf {};
struct RHp {
  double p;
};
struct RHInf {};
}  // namespace functional

/// Which scale-invariant interval functional to evaluate.
using FunctionalKind =
    std::variant<functional::Aq, functional::AInf, functional::RHp, functional::RHInf>;

/// <w^theta> over [0, 1]; +inf when theta*nu <= -1.
ExtReal moment(const PowerWeight& w, double theta);

/// <w^theta> over [alpha, beta], exact.
ExtReal interval_moment(const PowerWeight& w, double theta, double alpha, double beta);

/// log of interval_moment, +inf when the average diverges. Stays finite where
/// c^theta alone would overflow.
double log_interval_moment(const PowerWeight& w, double theta, double alpha, double beta);

/// <log w> over [alpha, beta]; finite for every admissible interval.
double log_moment(const PowerWeight& w, double alpha, double beta);

/// ess sup of w on [alpha, beta]; requires nu >= 0.
double ess_sup(const PowerWeight& w, double alpha, double beta);

/// RH_p constant of the weight: (1 + nu)/(1 + p nu)^(1/p), independent of c and a.
double rhp_norm_closed(const PowerWeight& w, double p);

/// RH_inf constant of the weight: nu + 1.
double rhinf_norm_closed(const PowerWeight& w);

/// Weight attaining the Bellman supremum at x. For finite p the branch picks
/// s+/r+ (A_q side, q > 1) or s-/r- (Gehring side). Points on the lower
/// boundary, and delta = 1, give the constant weight x1.
PowerWeight extremal_weight(const ExponentP& p, double delta, DomainPoint x, Branch branch,
                            const RootConfig& cfg = {});

/// Value of the chosen functional on [alpha, beta]:
/// Aq: <w><w^(1-q')>^(q-1), AInf: <w> exp(-<log w>), RHp: <w^p>^(1/p)/<w>,
/// RHInf: ess sup/<w>.
ExtReal functional_ratio(const PowerWeight& w, const FunctionalKind& kind, double alpha,
                         double beta);

struct SupSearchOptions {
  /// Add 0, a and 1 to the dyadic endpoints. The maximizing interval for the
  /// weight family ends at a, which the dyadic grid generally misses.
  bool inject_candidates = true;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct SupResult {
  ExtReal sup;
  double alpha = 0.0;
  double beta = 1.0;
};

/// Maximum of functional_ratio over all intervals with endpoints on the
/// dyadic grid of 2^depth cells. Ties go to the lexicographically smallest
/// interval, so the result does not depend on the thread count.
SupResult sup_ratio_search(const PowerWeight& w, const FunctionalKind& kind, int depth,
                           const SupSearchOptions& opts = {});

}  // namespace rhsharp
