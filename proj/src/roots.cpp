#include "rhsharp/roots.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rhsharp {

namespace {

void require_p(double p, const char* what) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError(std::string(what) + ": requires finite p > 1");
  }
}

void require_delta(double delta, const char* what) {
  if (!(delta >= 1.0) || !std::isfinite(delta)) {
    throw DomainError(std::string(what) + ": requires delta >= 1");
  }
}

// Branch map in the variable v = 1 - p u, which keeps relative precision
// as u approaches 1/p:  (p-1) log v + p log p - p log(1 + (p-1) v).
double log_branch_map_v(double p, double v) {
  return (p - 1.0) * std::log(v) + p * std::log(p) - p * std::log1p((p - 1.0) * v);
}

}  // namespace

void RootConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_iter < 1) {
    throw DomainError("RootConfig requires rel_tol > 0, abs_tol > 0, max_iter >= 1");
  }
}

double log_branch_map(double p, double u) {
  if (u * p >= 1.0) return -std::numeric_limits<double>::infinity();
  return (p - 1.0) * std::log1p(-p * u) - p * std::log1p(-(p - 1.0) * u);
}

double u_plus(double p, double t, const RootConfig& cfg) {
  require_p(p, "u_plus");
  cfg.validate();
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("u_plus: t must lie in [0, 1]");
  if (t == 1.0) return 0.0;
  if (t == 0.0) return 1.0 / p;

  const double lt = std::log(t);
  // Split [0, 1/p] at its midpoint: solve in u on the left half and in
  // v = 1 - p u on the right half so both ends keep relative accuracy.
  const double u_mid = 0.5 / p;
  if (log_branch_map(p, u_mid) <= lt) {
    return detail::bisect([&](double u) { return lt - log_branch_map(p, u); }, 0.0, u_mid, cfg,
                          "u_plus");
  }
  const double v = detail::bisect([&](double v) { return log_branch_map_v(p, v) - lt; }, 0.0,
                                  0.5, cfg, "u_plus");
  return (1.0 - v) / p;
}

double u_minus(double p, double t, const RootConfig& cfg) {
  require_p(p, "u_minus");
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("u_minus: t must be > 0 (the branch is unbounded at t = 0)");
  if (t > 1.0) throw DomainError("u_minus: t must be <= 1");
  if (t == 1.0) return 0.0;

  const double lt = std::log(t);
  auto g = [&](double u) { return log_branch_map(p, u) - lt; };
  // The root can sit far beyond 2^60 when delta^p is huge, so the bracket is
  // grown in w = log(1 - u), where the map has an overflow-free form, and the
  // bisection then runs in u.
  auto gw = [&](double w) {
    const double ew = std::exp(-w);
    return -w + (p - 1.0) * std::log(p - (p - 1.0) * ew) - p * std::log((p - 1.0) + (2.0 - p) * ew) - lt;
  };
  double w_lo = detail::expand_bracket(gw, 0.0, 1.0, 1.0, "u_minus");
  // keep p u finite as well
  const double w_max = std::log(std::numeric_limits<double>::max()) - std::log(p) - 1.0;
  if (w_lo > w_max) {
    if (gw(w_max) > 0.0) throw IterationError("u_minus: root lies beyond the double range");
    w_lo = w_max;
  }
  const double u_hi = w_lo <= 1.0 ? 0.0 : -std::expm1(0.5 * w_lo);
  return detail::bisect(g, -std::expm1(w_lo), u_hi, cfg, "u_minus");
}

SPair s_pair(double p, double delta, const RootConfig& cfg) {
  require_p(p, "s_pair");
  require_delta(delta, "s_pair");
  if (delta == 1.0) return {0.0, 0.0};
  const double t = std::exp(-p * std::log(delta));
  return {u_minus(p, t, cfg), u_plus(p, t, cfg)};
}

std::pair<double, double> r_pair(double p, double delta, DomainPoint x, const RootConfig& cfg) {
  require_p(p, "r_pair");
  require_delta(delta, "r_pair");
  const double t = domain_ratio(ExponentP::finite(p), delta, x);
  if (delta == 1.0) return {0.0, 0.0};
  return {u_minus(p, t, cfg), u_plus(p, t, cfg)};
}

double q_star(const ExponentP& p, double delta, const RootConfig& cfg) {
  require_delta(delta, "q_star");
  cfg.validate();
  if (p.is_inf()) return delta;
  const double pv = p.value();
  if (delta == 1.0) return 1.0;

  // sign of ((x/delta)^p - 1) - p(x - 1), evaluated in log form
  auto f = [&](double x) { return pv * std::log(x / delta) - std::log1p(pv * (x - 1.0)); };
  const double hi = detail::expand_bracket(f, 1.0, 1.0, 1.0, "q_star");
  return detail::bisect(f, 1.0, hi, cfg, "q_star");
}

double log_critical_gap(double p, double delta, const RootConfig& cfg) {
  require_p(p, "log_critical_gap");
  require_delta(delta, "log_critical_gap");
  cfg.validate();
  if (delta == 1.0) return 0.0;

  // With e = p x - (p - 1) the lower root equation reads
  // p log((p - 1 + e)/(p delta)) = log e; solved for L = log e, which stays
  // representable when e itself is far below machine epsilon.
  const double c = std::log(p) + std::log(delta);
  auto f = [&](double L) { return p * (std::log(p - 1.0 + std::exp(L)) - c) - L; };
  const double lo = detail::expand_bracket(f, 0.0, 1.0, -1.0, "log_critical_gap");
  return detail::bisect(f, lo, 0.0, cfg, "log_critical_gap");
}

double q_sub(double p, double delta, const RootConfig& cfg) {
  require_p(p, "q_sub");
  require_delta(delta, "q_sub");
  if (delta == 1.0) return 1.0;
  return (p - 1.0 + std::exp(log_critical_gap(p, delta, cfg))) / p;
}

ExtReal t_star(double p, double delta, const RootConfig& cfg) {
  require_p(p, "t_star");
  require_delta(delta, "t_star");
  if (delta == 1.0) return ExtReal::infinity();
  return ExtReal(-p / std::expm1(log_critical_gap(p, delta, cfg)));
}

}  // namespace rhsharp
