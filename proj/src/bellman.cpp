#include "rhsharp/bellman.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rhsharp {

namespace {

// Relative guard band around the critical exponents; inputs inside it are
// treated as critical, which puts them in the closed infinite band.
constexpr double kCriticalGuard = 1e-12;

struct BranchValues {
  double r;
  double s;
};

BranchValues branch_values(const Parameters& params, DomainPoint x) {
  const double p = params.p().value();
  const auto [r_minus, r_plus] = r_pair(p, params.delta(), x, params.root_config());
  if (params.regime() == Regime::Minus) return {r_minus, params.s().s_minus};
  return {r_plus, params.s().s_plus};
}

// log of the finite-p closed form in the x1^(1-q') representation.
double log_bellman_finite_p(const Parameters& params, DomainPoint x, BranchValues rs) {
  const double p = params.p().value();
  const double qc = params.q_conj();
  const double g = params.gamma();
  const auto [r, s] = rs;
  const double one_minus_gs = 1.0 - g * s;
  if (!(one_minus_gs > 0.0)) return std::numeric_limits<double>::infinity();
  return (1.0 - qc) * std::log(x.x1) + qc * (std::log1p(-p * s) - std::log1p(-p * r)) +
         (qc - 1.0) * (std::log1p(-(p - 1.0) * r) - std::log1p(-(p - 1.0) * s)) +
         std::log1p(-g * r) - std::log(one_minus_gs);
}

void require_finite_off_band(const Parameters& params, const char* what) {
  if (params.p().is_inf()) throw DomainError(std::string(what) + ": requires finite p");
  if (params.regime() == Regime::Infinite) {
    throw DomainError(std::string(what) + ": q lies in the closed band [q_*, q*]");
  }
}

}  // namespace

Parameters::Parameters(ExponentP p, double q, double delta, const RootConfig& cfg)
    : p_(p), q_(q), delta_(delta), cfg_(cfg) {
  cfg_.validate();
  if (!(delta >= 1.0) || !std::isfinite(delta)) throw DomainError("Parameters: delta must be >= 1");
  if (!std::isfinite(q) || !(q > 0.0)) throw DomainError("Parameters: q must be a finite positive real");
  if (q == 1.0) throw DomainError("Parameters: q = 1 is not admissible");
  if (p.is_inf()) {
    if (q < 1.0) throw DomainError("Parameters: p = inf requires q > 1");
  } else {
    const double pv = p.value();
    if (!(q > (pv - 1.0) / pv)) throw DomainError("Parameters: q must exceed (p-1)/p");
  }
  q_conj_ = q / (q - 1.0);

  if (p.is_inf()) {
    q_star_ = delta;
    regime_ = q > delta * (1.0 + kCriticalGuard) ? Regime::Plus : Regime::Infinite;
    return;
  }
  const double pv = p.value();
  gamma_ = pv + q_conj_ - 1.0;
  s_ = s_pair(pv, delta, cfg_);
  q_star_ = rhsharp::q_star(p, delta, cfg_);
  q_sub_ = rhsharp::q_sub(pv, delta, cfg_);
  if (q > q_star_ * (1.0 + kCriticalGuard)) {
    regime_ = Regime::Plus;
  } else if (q < q_sub_ * (1.0 - kCriticalGuard)) {
    regime_ = Regime::Minus;
  } else {
    regime_ = Regime::Infinite;
  }
}

double Parameters::gamma() const {
  if (p_.is_inf()) throw DomainError("gamma is defined for finite p only");
  return gamma_;
}

double Parameters::q_sub() const {
  if (p_.is_inf()) throw DomainError("q_sub is defined for finite p only");
  return q_sub_;
}

ExtReal bellman_value(const Parameters& params, DomainPoint x) {
  const auto loc = classify_point(params.p(), params.delta(), x);
  if (loc == DomainLocation::LowerBoundary) {
    return ExtReal(std::pow(x.x1, 1.0 - params.q_conj()));
  }
  if (params.regime() == Regime::Infinite) return ExtReal::infinity();

  if (params.p().is_inf()) {
    const double q = params.q();
    const double d = params.delta();
    return ExtReal(std::pow(x.x2, 1.0 - params.q_conj()) * (q - d * x.x1 / x.x2) / (q - d));
  }
  return ExtReal::from_double(std::exp(log_bellman_finite_p(params, x, branch_values(params, x))));
}

double bellman_value_x2_form(const Parameters& params, DomainPoint x) {
  require_finite_off_band(params, "bellman_value_x2_form");
  classify_point(params.p(), params.delta(), x);
  const double p = params.p().value();
  const double g = params.gamma();
  const auto [r, s] = branch_values(params, x);
  const double lb = -g * std::log(x.x1) + std::log(x.x2) +
                    g * (std::log1p(-p * s) - std::log1p(-p * r)) +
                    g * (std::log1p(-(p - 1.0) * r) - std::log1p(-(p - 1.0) * s)) +
                    std::log1p(-g * r) - std::log1p(-g * s);
  return std::exp(lb);
}

double bellman_infinity_value(const ExponentP& p, double delta, DomainPoint x,
                              const RootConfig& cfg) {
  classify_point(p, delta, x);
  if (p.is_inf()) return std::exp(delta * (1.0 - x.x1 / x.x2)) / x.x2;

  const double pv = p.value();
  const double r = r_pair(pv, delta, x, cfg).second;
  const double s = s_pair(pv, delta, cfg).s_plus;
  const double one_ps = 1.0 - pv * s;
  const double one_pr = 1.0 - pv * r;
  const double log_ratio = std::log1p(-(pv - 1.0) * r) + std::log(one_ps) - std::log(one_pr) -
                           std::log1p(-(pv - 1.0) * s);
  return std::exp(log_ratio + (s - r) / (one_ps * one_pr)) / x.x1;
}

double bellman_limit_check(const Parameters& params, DomainPoint x) {
  if (params.regime() != Regime::Plus) throw DomainError("bellman_limit_check: requires q > q*");
  const ExtReal b = bellman_value(params, x);
  return std::exp((params.q() - 1.0) * std::log(b.value()));
}

double hessian_form(const Parameters& params, DomainPoint x, double d1, double d2) {
  require_finite_off_band(params, "hessian_form");
  if (classify_point(params.p(), params.delta(), x) != DomainLocation::Interior) {
    throw DomainError("hessian_form: requires a strictly interior point");
  }
  const double p = params.p().value();
  const double qc = params.q_conj();
  const double g = params.gamma();
  const auto rs = branch_values(params, x);
  const double r = rs.r;
  if (r == 0.0 || r == rs.s) throw DomainError("hessian_form: point is numerically on the boundary");

  const double b = std::exp(log_bellman_finite_p(params, x, rs));
  const double lin = 1.0 - (p - 1.0) * r;
  const double coeff = -lin * lin * g * qc * (qc - 1.0) * b /
                       ((1.0 - g * r) * (p - 1.0) * (p - 1.0) * r * x.x1 * x.x1);
  const double v = d1 - x.x1 / (lin * p * x.x2) * d2;
  return coeff * v * v;
}

std::pair<double, double> hessian_kernel_direction(const Parameters& params, DomainPoint x) {
  require_finite_off_band(params, "hessian_kernel_direction");
  const double p = params.p().value();
  const double r = branch_values(params, x).r;
  return {x.x1 / ((1.0 - (p - 1.0) * r) * p * x.x2), 1.0};
}

DomainPoint TangentSegment::at(double r) const {
  const double one_pr = 1.0 - p * r;
  return {b * (1.0 - (p - 1.0) * r) / one_pr, std::pow(delta * b, p) / one_pr};
}

TangentSegment tangent_segment(double p, double delta, double b, Branch branch,
                               const RootConfig& cfg) {
  if (!(delta > 1.0)) throw DomainError("tangent_segment: delta = 1 collapses the segment to a point");
  if (!(b > 0.0)) throw DomainError("tangent_segment: requires b > 0");
  const SPair s = s_pair(p, delta, cfg);
  TangentSegment seg;
  seg.p = p;
  seg.delta = delta;
  seg.b = b;
  seg.r_end = branch == Branch::Plus ? s.s_plus : s.s_minus;
  seg.endpoint_gamma_delta = seg.at(0.0);
  seg.endpoint_gamma_one = seg.at(seg.r_end);
  return seg;
}

}  // namespace rhsharp
