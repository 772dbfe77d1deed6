#include "rhsharp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace rhsharp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |theta*nu + 1| below this switches the ramp integral to its log antiderivative.
constexpr double kLogAntiderivativeCutoff = 1e-9;

void require_interval(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0)) {
    throw DomainError("interval must satisfy 0 <= alpha < beta <= 1");
  }
}

double log_add(double la, double lb) {
  if (la == -kInf) return lb;
  if (lb == -kInf) return la;
  const double hi = std::max(la, lb);
  return hi + std::log1p(std::exp(std::min(la, lb) - hi));
}

// log of (1/a) * integral over [alpha, m] of (t/a)^(k-1) dt, i.e. of
// integral_{A}^{M} u^(k-1) du with A = alpha/a, M = m/a <= 1.
double log_ramp_integral(double k, double A, double M) {
  const double lA = A > 0.0 ? std::log(A) : -kInf;
  const double lM = std::log(M);
  if (std::abs(k) < kLogAntiderivativeCutoff) {
    if (A == 0.0) return kInf;
    return std::log(lM - lA);
  }
  if (A == 0.0 && k < 0.0) return kInf;
  // |M^k - A^k| / |k|, factored around the larger term.
  const double kA = A > 0.0 ? k * lA : -kInf;
  const double kM = k * lM;
  const double hi = std::max(kA, kM);
  const double gap = std::abs(kM - kA);
  return hi + std::log(-std::expm1(-gap)) - std::log(std::abs(k));
}

struct Candidate {
  ExtReal value;
  std::size_t i = 0;
  std::size_t j = 0;
  bool set = false;
};

// Strictly better, or equal value with a lexicographically smaller interval.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.set) return a.set;
  if (!a.set) return false;
  if (b.value < a.value) return true;
  if (a.value < b.value) return false;
  return std::pair(a.i, a.j) < std::pair(b.i, b.j);
}

}  // namespace

PowerWeight::PowerWeight(double c, double a, double nu) : c_(c), a_(a), nu_(nu) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("PowerWeight: requires c > 0");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("PowerWeight: requires 0 < a <= 1");
  if (!std::isfinite(nu)) throw DomainError("PowerWeight: nu must be finite");
}

double PowerWeight::operator()(double t) const {
  if (t >= a_ || nu_ == 0.0) return c_;
  return c_ * std::pow(t / a_, nu_);
}

ExtReal moment(const PowerWeight& w, double theta) {
  const double tn = theta * w.nu();
  if (!(tn > -1.0)) return ExtReal::infinity();
  const double lv = theta * std::log(w.c()) + std::log1p((1.0 - w.a()) * tn) - std::log1p(tn);
  return ExtReal::from_double(std::exp(lv));
}

double log_interval_moment(const PowerWeight& w, double theta, double alpha, double beta) {
  require_interval(alpha, beta);
  const double a = w.a();
  double log_total = -kInf;
  if (alpha < a) {
    const double m = std::min(beta, a);
    const double lr = std::log(a) + log_ramp_integral(theta * w.nu() + 1.0, alpha / a, m / a);
    if (lr == kInf) return kInf;
    log_total = lr;
  }
  const double plateau = beta - std::max(alpha, a);
  if (plateau > 0.0) log_total = log_add(log_total, std::log(plateau));
  return theta * std::log(w.c()) + log_total - std::log(beta - alpha);
}

ExtReal interval_moment(const PowerWeight& w, double theta, double alpha, double beta) {
  return ExtReal::from_double(std::exp(log_interval_moment(w, theta, alpha, beta)));
}

double log_moment(const PowerWeight& w, double alpha, double beta) {
  require_interval(alpha, beta);
  const double a = w.a();
  double ramp = 0.0;  // integral of log(t/a) over the ramp part
  if (alpha < a && w.nu() != 0.0) {
    auto antider = [](double u) { return u > 0.0 ? u * (std::log(u) - 1.0) : 0.0; };
    const double m = std::min(beta, a);
    ramp = a * (antider(m / a) - antider(alpha / a));
  }
  return std::log(w.c()) + w.nu() * ramp / (beta - alpha);
}

double ess_sup(const PowerWeight& w, double alpha, double beta) {
  require_interval(alpha, beta);
  if (w.nu() < 0.0) throw UnsupportedError("ess_sup: decreasing ramps (nu < 0) are not supported");
  if (beta >= w.a()) return w.c();
  return w.c() * std::pow(beta / w.a(), w.nu());
}

double rhp_norm_closed(const PowerWeight& w, double p) {
  const double nu = w.nu();
  if (!(nu > -1.0 / p)) throw DomainError("rhp_norm_closed: requires nu > -1/p");
  return (1.0 + nu) * std::exp(-std::log1p(p * nu) / p);
}

double rhinf_norm_closed(const PowerWeight& w) {
  if (w.nu() < 0.0) throw DomainError("rhinf_norm_closed: requires nu >= 0");
  return w.nu() + 1.0;
}

PowerWeight extremal_weight(const ExponentP& p, double delta, DomainPoint x, Branch branch,
                            const RootConfig& cfg) {
  if (!(delta >= 1.0)) throw DomainError("extremal_weight: requires delta >= 1");
  const auto loc = classify_point(p, delta, x);
  if (delta == 1.0 || loc == DomainLocation::LowerBoundary) return PowerWeight::constant(x.x1);

  if (p.is_inf()) {
    const double a = std::min(1.0, (1.0 - x.x1 / x.x2) / (1.0 - 1.0 / delta));
    return {x.x2, a, delta - 1.0};
  }

  const double pv = p.value();
  const SPair sp = s_pair(pv, delta, cfg);
  const auto [r_minus, r_plus] = r_pair(pv, delta, x, cfg);
  const double s = branch == Branch::Plus ? sp.s_plus : sp.s_minus;
  const double r = branch == Branch::Plus ? r_plus : r_minus;
  const double nu = s / (1.0 - pv * s);
  if (!(nu > -1.0 / pv)) throw IterationError("extremal_weight: ramp exponent violates nu > -1/p");
  // On the upper boundary r = 0 and a = 1 exactly.
  const double a = (loc == DomainLocation::UpperBoundary)
                       ? 1.0
                       : std::min(1.0, (s - r) / (s * (1.0 - pv * r)));
  const double c = x.x1 * (1.0 - pv * r) * (1.0 - (pv - 1.0) * s) /
                   ((1.0 - (pv - 1.0) * r) * (1.0 - pv * s));
  return {c, a, nu};
}

ExtReal functional_ratio(const PowerWeight& w, const FunctionalKind& kind, double alpha,
                         double beta) {
  const double l1 = log_interval_moment(w, 1.0, alpha, beta);
  if (l1 == kInf) throw DomainError("functional_ratio: weight is not integrable on the interval");

  return std::visit(
      [&](const auto& k) -> ExtReal {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, functional::Aq>) {
          if (!(k.q > 1.0)) throw DomainError("functional_ratio: A_q requires q > 1");
          const double lt = log_interval_moment(w, -1.0 / (k.q - 1.0), alpha, beta);
          if (lt == kInf) return ExtReal::infinity();
          return ExtReal::from_double(std::exp(l1 + (k.q - 1.0) * lt));
        } else if constexpr (std::is_same_v<K, functional::AInf>) {
          return ExtReal::from_double(std::exp(l1 - log_moment(w, alpha, beta)));
        } else if constexpr (std::is_same_v<K, functional::RHp>) {
          if (!(k.p > 1.0)) throw DomainError("functional_ratio: RH_p requires p > 1");
          const double lp = log_interval_moment(w, k.p, alpha, beta);
          if (lp == kInf) return ExtReal::infinity();
          return ExtReal::from_double(std::exp(lp / k.p - l1));
        } else {
          return ExtReal::from_double(ess_sup(w, alpha, beta) / std::exp(l1));
        }
      },
      kind);
}

SupResult sup_ratio_search(const PowerWeight& w, const FunctionalKind& kind, int depth,
                           const SupSearchOptions& opts) {
  if (depth < 1 || depth > 24) throw DomainError("sup_ratio_search: depth must be in [1, 24]");
  const std::size_t cells = std::size_t{1} << depth;
  std::vector<double> ends;
  ends.reserve(cells + 4);
  for (std::size_t k = 0; k <= cells; ++k) ends.push_back(static_cast<double>(k) / cells);
  if (opts.inject_candidates) ends.insert(ends.end(), {0.0, w.a(), 1.0});
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

  unsigned nthreads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  nthreads = std::max(1u, std::min<unsigned>(nthreads, 64));

  const std::size_t n = ends.size();
  auto scan = [&](unsigned worker) {
    Candidate best;
    for (std::size_t i = worker; i + 1 < n; i += nthreads) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Candidate c{functional_ratio(w, kind, ends[i], ends[j]), i, j, true};
        if (better(c, best)) best = c;
      }
    }
    return best;
  };

  std::vector<Candidate> partial(nthreads);
  if (nthreads == 1) {
    partial[0] = scan(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] { partial[t] = scan(t); });
    }
  }

  Candidate best;
  for (const auto& c : partial) {
    if (better(c, best)) best = c;
  }
  return {best.value, ends[best.i], ends[best.j]};
}

}  // namespace rhsharp
