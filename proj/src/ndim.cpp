#include "rhsharp/ndim.hpp"

#include <cmath>
#include <string>

#include "rhsharp/embedding.hpp"

namespace rhsharp {

namespace {

void require_pn(double p, int n, const char* what) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError(std::string(what) + ": requires finite p > 1");
  if (n < 2 || n > 60) throw DomainError(std::string(what) + ": requires 2 <= n <= 60");
}

}  // namespace

double delta_threshold(double p, int n) {
  require_pn(p, n, "delta_threshold");
  const double inv_pconj = (p - 1.0) / p;
  return std::exp(-inv_pconj * std::log1p(-std::ldexp(1.0, -n)));
}

double ratio_bound_rhs(double p, double y) {
  const double ly = std::log(y);
  // log(1 + y^p) without overflowing y^p for large y
  const double log_den = ly > 0.0 ? p * ly + std::log1p(std::exp(-p * ly)) : std::log1p(std::exp(p * ly));
  return std::exp(p * std::log1p(y) - log_den);
}

double ratio_bound_y(double p, int n, double delta, const RootConfig& cfg) {
  require_pn(p, n, "ratio_bound_y");
  cfg.validate();
  if (!(delta >= 1.0)) throw DomainError("ratio_bound_y: requires delta >= 1");
  if (!(delta < delta_threshold(p, n))) {
    throw DomainError("ratio_bound_y: delta at or above the threshold, no finite ratio bound");
  }
  if (delta == 1.0) return 1.0;

  const double pconj = p / (p - 1.0);
  const double base = 2.0 + std::ldexp(1.0, n) * std::expm1(-pconj * std::log(delta));
  if (!(base > 1.0)) throw DomainError("ratio_bound_y: no finite ratio bound at this delta");
  const double lhs = (p - 1.0) * std::log(base);

  // log rhs(y) - lhs: >= 0 at y = 1, decreasing towards -lhs < 0.
  auto h = [&](double y) {
    const double ly = std::log(y);
    return p * std::log1p(y) - (p * ly + std::log1p(std::exp(-p * ly))) - lhs;
  };
  if (h(1.0) <= 0.0) return 1.0;
  const double hi = detail::expand_bracket(h, 1.0, 1.0, 1.0, "ratio_bound_y");
  return detail::bisect(h, 1.0, hi, cfg, "ratio_bound_y");
}

double f_p(double p, double y) {
  if (std::abs(y - 1.0) < 1e-8) return p;
  const double ly = std::log(y);
  return -y * y * std::expm1(-2.0 * p * ly) / std::expm1(2.0 * ly);
}

double epsilon_bound(double p, int n, double delta, const RootConfig& cfg) {
  const double y = ratio_bound_y(p, n, delta, cfg);
  if (y == 1.0) return delta;
  const double f = f_p(p, y);
  const double le = std::log(delta) + std::log(f / p) + (1.0 - p) / p * std::log((f - 1.0) / (p - 1.0));
  return std::exp(le);
}

NDimBound ndim_aq_bound(double p, double q, int n, double delta, const RootConfig& cfg) {
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("ndim_aq_bound: requires q > 1");
  NDimBound out;
  out.n = n;
  out.y = ratio_bound_y(p, n, delta, cfg);
  out.epsilon = epsilon_bound(p, n, delta, cfg);
  if (out.epsilon == 1.0) {
    out.constant = ExtReal(1.0);
    return out;
  }
  out.constant = aq_formula(q, q_star(ExponentP::finite(p), out.epsilon, cfg));
  return out;
}

}  // namespace rhsharp
