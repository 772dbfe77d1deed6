#pragma once

#include "rhsharp/ext_real.hpp"
#include "rhsharp/exponent.hpp"
#include "rhsharp/roots.hpp"

namespace rhsharp {

/// A sharp embedding constant together with the exponent that governs
/// whether it is finite (q* for A_q and A_inf, t* for RH_t).
struct EmbeddingResult {
  ExtReal constant;
  ExtReal critical_exponent;

  [[nodiscard]] bool finite() const { return constant.is_finite(); }
};

/// Sharp A_q constant of RH_p^delta: +inf for q <= q*, else
/// (1/q*) ((q-1)/(q-q*))^(q-1). Exactly 1 at delta = 1.
EmbeddingResult aq_constant(const ExponentP& p, double q, double delta, const RootConfig& cfg = {});

/// Sharp A_inf constant (1/q*) exp(q* - 1), with q* = delta for p = inf.
EmbeddingResult ainf_constant(const ExponentP& p, double delta, const RootConfig& cfg = {});

/// Sharp RH_t constant for p <= t: finite only below the Gehring threshold t*.
EmbeddingResult rht_constant(double p, double t, double delta, const RootConfig& cfg = {});

/// (1/qs) ((q-1)/(q-qs))^(q-1) for q > qs, evaluated in log space; +inf otherwise.
/// Shared with the cube bounds, which plug in an enlarged delta.
ExtReal aq_formula(double q, double qs);

}  // namespace rhsharp
