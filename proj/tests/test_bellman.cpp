#include <doctest.h>

#include <cmath>
#include <vector>

#include "rhsharp/bellman.hpp"
#include "rhsharp/embedding.hpp"
#include "support.hpp"

using namespace rhsharp;
using rhsharp::testing::interior_point;
using rhsharp::testing::rel_err;
using rhsharp::testing::uniform;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const ExponentP kP2 = ExponentP::finite(2);

double B(const Parameters& prm, DomainPoint x) { return bellman_value(prm, x).value(); }

bool in_domain(double p, double delta, DomainPoint x) {
  if (!(x.x1 > 0)) return false;
  const double lo = std::pow(x.x1, p), hi = std::pow(delta * x.x1, p);
  return x.x2 >= lo * (1 - 1e-13) && x.x2 <= hi * (1 + 1e-13);
}

bool chord_in_domain(double p, double delta, DomainPoint a, DomainPoint b) {
  for (int i = 0; i <= 64; ++i) {
    const double t = i / 64.0;
    if (!in_domain(p, delta, {a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)})) return false;
  }
  return true;
}

/// Second derivative of B along d by central differences with one Richardson step.
double fd_quadratic_form(const Parameters& prm, DomainPoint x, double d1, double d2, double h) {
  auto f = [&](double tau) { return B(prm, {x.x1 + tau * d1, x.x2 + tau * d2}); };
  auto second = [&](double k) { return (f(k) - 2 * f(0) + f(-k)) / (k * k); };
  return (4 * second(h / 2) - second(h)) / 3;
}

struct Case {
  double p;
  double q;
  double delta;
};

/// Both finite regimes at several (p, delta).
std::vector<Case> regime_cases() {
  std::vector<Case> out;
  for (double p : {1.5, 2.0, 4.0}) {
    for (double delta : {1.3, 2.0}) {
      const double qs = q_star(ExponentP::finite(p), delta);
      out.push_back({p, qs + 2.0, delta});
      const double lo = (p - 1) / p, hi = q_sub(p, delta);
      out.push_back({p, lo + 0.5 * (hi - lo), delta});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parameters validation and regimes") {
  CHECK_THROWS_AS(Parameters(kP2, 1.0, 2), DomainError);
  CHECK_THROWS_AS(Parameters(kP2, 0.5, 2), DomainError);
  CHECK_THROWS_AS(Parameters(kP2, 10, 0.9), DomainError);
  CHECK_THROWS_AS(Parameters(ExponentP::infinity(), 0.8, 2), DomainError);
  CHECK(Parameters(kP2, 10, 2).regime() == Regime::Plus);
  CHECK(Parameters(kP2, 3, 2).regime() == Regime::Infinite);
  CHECK(Parameters(kP2, 0.52, 2).regime() == Regime::Minus);
  // the band is closed at both ends
  CHECK(Parameters(kP2, 4 + 2 * kSqrt3, 2).regime() == Regime::Infinite);
  CHECK(Parameters(kP2, 4 - 2 * kSqrt3, 2).regime() == Regime::Infinite);
  const Parameters prm(kP2, 10, 2);
  CHECK((prm.q_conj() - 1) * (prm.q() - 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(prm.gamma() == doctest::Approx(19.0 / 9.0));
}

TEST_CASE("bellman value examples") {
  const Parameters prm(kP2, 10, 2);
  CHECK(B(prm, {1, 1}) == 1.0);
  CHECK(bellman_value(Parameters(kP2, 3, 2), {1, 2}).is_inf());
  CHECK(B(Parameters(kP2, 3, 2), {1, 1}) == 1.0);

  const double s = 2 * kSqrt3 - 3, qc = 10.0 / 9.0, g = 19.0 / 9.0;
  const double want = std::pow(1 - 2 * s, qc) * std::pow(1 / (1 - s), qc - 1) / (1 - g * s);
  CHECK(rel_err(B(prm, {1, 4}), want) < 1e-12);

  CHECK(B(prm, {2, 4}) == doctest::Approx(std::pow(2.0, 1 - qc)).epsilon(1e-14));
  CHECK_THROWS_AS(bellman_value(prm, {1, 4.5}), DomainError);
  CHECK_THROWS_AS(bellman_value(prm, {1, 0.9}), DomainError);
}

TEST_CASE("bellman value for p = inf") {
  const ExponentP inf = ExponentP::infinity();
  const Parameters prm(inf, 3, 2);
  CHECK(B(prm, {1, 1}) == doctest::Approx(1.0));
  // x2^(1-q') (q - delta x1/x2)/(q - delta)
  const double qc = 1.5;
  CHECK(rel_err(B(prm, {1, 1.5}), std::pow(1.5, 1 - qc) * (3 - 2 / 1.5) / 1.0) < 1e-13);
  CHECK(bellman_value(Parameters(inf, 1.5, 2), {1, 1.5}).is_inf());
  CHECK(bellman_value(Parameters(inf, 2, 2), {1, 1.5}).is_inf());
  CHECK_THROWS_AS(bellman_value(prm, {1, 2.5}), DomainError);
}

TEST_CASE("q -> inf limit values") {
  const ExponentP inf = ExponentP::infinity();
  CHECK(bellman_infinity_value(inf, 2, {1, 1}) == doctest::Approx(1.0));
  CHECK(bellman_infinity_value(inf, 2, {1, 2}) == doctest::Approx(std::exp(1.0) / 2).epsilon(1e-14));
  const double s = 2 * kSqrt3 - 3;
  const double want = (1 - 2 * s) / (1 - s) * std::exp(s / (1 - 2 * s));
  const double got = bellman_infinity_value(kP2, 2, {1, 4});
  CHECK(rel_err(got, want) < 1e-12);
  CHECK(rel_err(got, ainf_constant(kP2, 2).constant.value()) < 1e-11);

  for (double q : {1e2, 1e3, 1e4}) {
    const Parameters prm(kP2, q, 2);
    // lower boundary: (x1^(1-q'))^(q-1) = 1/x1
    CHECK(rel_err(bellman_limit_check(prm, {3, 9}), 1.0 / 3) < 1e-12);
    CHECK(rel_err(bellman_infinity_value(kP2, 2, {3, 9}), 1.0 / 3) < 1e-12);
  }
  double prev = 1e300;
  for (double q : {1e2, 1e3, 1e4}) {
    const double binf = bellman_infinity_value(kP2, 2, {1, 2});
    const double err = rel_err(bellman_limit_check(Parameters(kP2, q, 2), {1, 2}), binf);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-2);
  CHECK_THROWS_AS(bellman_limit_check(Parameters(kP2, 3, 2), {1, 2}), DomainError);
}

TEST_CASE("two closed forms agree") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta);
    for (int i = 1; i < 20; ++i) {
      for (int j = 1; j < 20; ++j) {
        const DomainPoint x = interior_point(c.p, c.delta, 0.2 * i, j / 20.0);
        CHECK(rel_err(bellman_value_x2_form(prm, x), B(prm, x)) < 1e-10);
      }
    }
  }
}

TEST_CASE("scaling law") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta);
    for (int i = 0; i < 10; ++i) {
      const DomainPoint x = interior_point(c.p, c.delta, uniform(0.2, 5), uniform(0, 1));
      for (double lam : {0.5, 2.0, 10.0}) {
        const DomainPoint y{lam * x.x1, std::pow(lam, c.p) * x.x2};
        CHECK(rel_err(B(prm, y), std::pow(lam, 1 - prm.q_conj()) * B(prm, x)) < 1e-10);
      }
    }
  }
}

TEST_CASE("x1^(q'-1) B >= 1") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta);
    for (int i = 0; i < 50; ++i) {
      const DomainPoint x = interior_point(c.p, c.delta, uniform(0.2, 5), uniform(0, 1));
      CHECK(std::pow(x.x1, prm.q_conj() - 1) * B(prm, x) >= 1 - 1e-12);
    }
  }
}

TEST_CASE("concavity along chords") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta);
    int tested = 0;
    for (int attempt = 0; attempt < 4000 && tested < 100; ++attempt) {
      const double x1 = uniform(0.5, 2);
      const DomainPoint a = interior_point(c.p, c.delta, x1, uniform(0, 1));
      const DomainPoint b = interior_point(c.p, c.delta, x1 * uniform(0.8, 1.25), uniform(0, 1));
      if (!chord_in_domain(c.p, c.delta, a, b)) continue;
      ++tested;
      const double al = uniform(0, 1);
      const DomainPoint m{al * a.x1 + (1 - al) * b.x1, al * a.x2 + (1 - al) * b.x2};
      const double lhs = B(prm, m);
      const double rhs = al * B(prm, a) + (1 - al) * B(prm, b);
      CHECK(lhs >= rhs - 1e-9 * std::abs(rhs));
    }
    CHECK(tested == 100);
  }
}

TEST_CASE("concavity for p = inf") {
  const ExponentP inf = ExponentP::infinity();
  for (double delta : {1.5, 3.0}) {
    const Parameters prm(inf, delta + 1.0, delta);
    int tested = 0;
    for (int attempt = 0; attempt < 4000 && tested < 100; ++attempt) {
      const DomainPoint a{uniform(0.5, 2), 0};
      const DomainPoint b{uniform(0.5, 2), 0};
      const double x20 = uniform(std::max(a.x1, b.x1), delta * std::min(a.x1, b.x1));
      if (!(x20 >= std::max(a.x1, b.x1))) continue;
      const DomainPoint am{a.x1, uniform(a.x1, x20)};
      const DomainPoint bm{b.x1, uniform(b.x1, x20)};
      const double top = std::max(am.x2, bm.x2);
      ++tested;
      const double al = uniform(0, 1);
      const DomainPoint x0{al * a.x1 + (1 - al) * b.x1, top};
      const double rhs = al * B(prm, am) + (1 - al) * B(prm, bm);
      CHECK(B(prm, x0) >= rhs - 1e-9 * std::abs(rhs));
    }
    CHECK(tested == 100);
  }
}

TEST_CASE("hessian quadratic form") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta);
    for (int i = 0; i < 20; ++i) {
      const DomainPoint x = interior_point(c.p, c.delta, uniform(0.5, 2), uniform(0.05, 0.95));
      for (int k = 0; k < 8; ++k) {
        const double th = uniform(0, 2 * M_PI);
        CHECK(hessian_form(prm, x, std::cos(th), x.x2 * std::sin(th)) <= 1e-12);
      }
      const auto [k1, k2] = hessian_kernel_direction(prm, x);
      const double scale = std::abs(hessian_form(prm, x, 1, 0)) * (1 + k1 * k1);
      CHECK(std::abs(hessian_form(prm, x, k1, k2)) <= 1e-10 * scale);
      CHECK(hessian_form(prm, x, 2, 2 * x.x2) ==
            doctest::Approx(4 * hessian_form(prm, x, 1, x.x2)).epsilon(1e-13));
    }
  }
  const Parameters prm(kP2, 10, 2);
  CHECK(hessian_form(prm, {1, 2}, 1, 0) < 0);
  CHECK_THROWS_AS(hessian_form(prm, {1, 4}, 1, 0), DomainError);
  CHECK_THROWS_AS(hessian_form(prm, {1, 1}, 1, 0), DomainError);
  CHECK_THROWS_AS(hessian_form(Parameters(kP2, 3, 2), {1, 2}, 1, 0), DomainError);
}

TEST_CASE("hessian form matches finite differences") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta, rhsharp::testing::full_precision());
    for (int i = 0; i < 10; ++i) {
      const DomainPoint x = interior_point(c.p, c.delta, uniform(0.5, 2), uniform(0.1, 0.9));
      const double d1 = uniform(-1, 1), d2 = x.x2 * uniform(-1, 1);
      const double h = 1e-3;
      const double fd = fd_quadratic_form(prm, x, d1, d2, h);
      const double cf = hessian_form(prm, x, d1, d2);
      // relative to the form without the cancellation in its squared factor
      const double scale = std::abs(hessian_form(prm, x, d1, 0)) + std::abs(hessian_form(prm, x, 0, d2));
      CHECK(std::abs(fd - cf) <= 1e-5 * scale);
    }
  }
  const Parameters prm(kP2, 10, 2, rhsharp::testing::full_precision());
  const DomainPoint x{1, 2};
  CHECK(rel_err(fd_quadratic_form(prm, x, 1, 0, 1e-3), hessian_form(prm, x, 1, 0)) < 1e-5);
}

TEST_CASE("numeric hessian is singular") {
  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta, rhsharp::testing::full_precision());
    const DomainPoint x = interior_point(c.p, c.delta, 1.0, 0.5);
    const double h1 = 1e-3 * x.x1, h2 = 1e-3 * x.x2;
    auto f = [&](double a, double b) { return B(prm, {x.x1 + a, x.x2 + b}); };
    auto mixed = [&](double a, double b) {
      return (f(a, b) - f(a, -b) - f(-a, b) + f(-a, -b)) / (4 * a * b);
    };
    auto d11 = [&](double a) { return (f(a, 0) - 2 * f(0, 0) + f(-a, 0)) / (a * a); };
    auto d22 = [&](double b) { return (f(0, b) - 2 * f(0, 0) + f(0, -b)) / (b * b); };
    const double h11 = (4 * d11(h1 / 2) - d11(h1)) / 3;
    const double h22 = (4 * d22(h2 / 2) - d22(h2)) / 3;
    const double h12 = (4 * mixed(h1 / 2, h2 / 2) - mixed(h1, h2)) / 3;
    // entries carry ~1e-6 relative error; a regular hessian would give a ratio of order one
    CHECK(std::abs(h11 * h22 - h12 * h12) <= 1e-4 * std::abs(h11 * h22));
  }
}

TEST_CASE("tangent segments") {
  const TangentSegment seg = tangent_segment(2, 2, 1);
  CHECK(seg.endpoint_gamma_delta.x1 == 1.0);
  CHECK(seg.endpoint_gamma_delta.x2 == 4.0);
  const double s = 2 * kSqrt3 - 3;
  CHECK(rel_err(seg.endpoint_gamma_one.x1, (1 - s) / (1 - 2 * s)) < 1e-12);
  CHECK(rel_err(seg.endpoint_gamma_one.x2, 4 / (1 - 2 * s)) < 1e-12);
  CHECK(rel_err(seg.endpoint_gamma_one.x2, std::pow(seg.endpoint_gamma_one.x1, 2)) < 1e-12);
  CHECK_THROWS_AS(tangent_segment(2, 1, 1), DomainError);

  for (const auto& c : regime_cases()) {
    const Parameters prm(ExponentP::finite(c.p), c.q, c.delta);
    const Branch br = prm.regime() == Regime::Plus ? Branch::Plus : Branch::Minus;
    for (double b : {0.3, 1.0, 2.5}) {
      const TangentSegment t = tangent_segment(c.p, c.delta, b, br);
      const double dp = std::pow(c.delta, c.p);
      for (const DomainPoint& e : {t.endpoint_gamma_delta, t.endpoint_gamma_one}) {
        const double lhs = dp * c.p * e.x1 - std::pow(b, 1 - c.p) * e.x2;
        CHECK(rel_err(lhs, dp * b * (c.p - 1)) < 1e-10);
      }
      CHECK(rel_err(t.endpoint_gamma_one.x2, std::pow(t.endpoint_gamma_one.x1, c.p)) < 1e-10);
      const DomainPoint e0 = t.endpoint_gamma_delta, e1 = t.endpoint_gamma_one;
      for (double lam : {0.25, 0.5, 0.75}) {
        const DomainPoint m{e0.x1 + lam * (e1.x1 - e0.x1), e0.x2 + lam * (e1.x2 - e0.x2)};
        const double lin = (1 - lam) * B(prm, e0) + lam * B(prm, e1);
        CHECK(rel_err(B(prm, m), lin) < 1e-9);
      }
    }
  }
}
