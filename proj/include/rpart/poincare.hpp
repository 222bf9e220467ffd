#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "rpart/exact.hpp"
#include "rpart/kloosterman.hpp"
#include "rpart/precision.hpp"
#include "rpart/real.hpp"

namespace rpart {

// Weight k = two_k / 2 and index m of a Poincare series P_{k,m}.
struct WeightIndexPair {
  int two_k = 5;
  RationalIndex24 m;

  // Requires k >= 5/2 and k - 12m in 2Z.
  static WeightIndexPair checked(int two_k, RationalIndex24 m);
};

struct SeriesTerm {
  std::int64_t c = 0;
  Complex term;
  Precision bits = 0;  // 64 marks the long double tier
};

struct CoefficientResult {
  Complex value;
  std::int64_t c_max = 0;
  double tail_estimate = 0;  // |S(c_max) - S(c_max / 2)|
  Precision bits = 0;        // accumulation precision
  std::vector<SeriesTerm> terms;
};

// A sum over moduli c >= 1. Each term is produced either in MPFR at a
// per-term precision or in long double, whichever the bound allows.
struct ModulusSeries {
  // Upper bound for log2 |term(c)|.
  std::function<double(std::int64_t)> log2_bound;
  std::function<Complex(std::int64_t, const PrecisionContext&)> term;
  std::function<std::complex<long double>(std::int64_t)> term_ld;
};

// Sums a ModulusSeries to absolute accuracy ~2^-guard_bits. With
// ctx.fixed_truncation the sum stops at ctx.c_max_initial; otherwise it starts
// at c_initial and doubles until |S(2C) - S(C)| < ctx.truncation_tolerance,
// throwing PrecisionError past ctx.c_max_cap.
CoefficientResult sum_modulus_series(const ModulusSeries& series, std::int64_t c_initial,
                                     const PrecisionContext& ctx, bool keep_terms = false);

// max(ctx.c_max_initial, ceil(8 sqrt(24 n + 24 |m|)))
std::int64_t default_c_max(RationalIndex24 m, RationalIndex24 n, const PrecisionContext& ctx);

// c_n of P_{k,m}, m < 0: 2 pi i^{-k} (n/|m|)^{(k-1)/2} sum_c A(m,n;c)/c I_{k-1}(4 pi sqrt(|m| n)/c)
CoefficientResult coeff_negative_m(WeightIndexPair p, RationalIndex24 n, const PrecisionContext& ctx,
                                   bool keep_terms = false);

// c_n of P_{k,m}, m > 0: delta_{m,n} + 2 pi i^{-k} (n/m)^{(k-1)/2} sum_c A(m,n;c)/c J_{k-1}(4 pi sqrt(mn)/c)
CoefficientResult coeff_positive_m(WeightIndexPair p, RationalIndex24 n, const PrecisionContext& ctx,
                                   bool keep_terms = false);

// -(2k / B_k) sigma_{k-1}(n)
ExactRational eisenstein_coeff(int k, std::int64_t n);

// (-1)^{k/2} (2 pi)^k n^{k-1} / (k-1)! sum_c A(0,n;c) / c^k
CoefficientResult eisenstein_kloosterman(int k, std::int64_t n, const PrecisionContext& ctx,
                                         bool keep_terms = false);

// zeta(k) = (-1)^{k/2+1} (2 pi)^k B_k / (2 k!)
Real zeta_even(int k, Precision prec);

// The same formula with a supplied value B in place of B_k.
Real zeta_from_bernoulli(int k, const ExactRational& b, Precision prec);

// Dispatches on the sign of m; m = 0 returns the exact Eisenstein value.
CoefficientResult poincare_coefficient(WeightIndexPair p, RationalIndex24 n, const PrecisionContext& ctx,
                                       bool keep_terms = false);

// log2 of an upper bound for I_nu(x) (or |J_nu(x)|) at real x > 0.
double log2_bessel_I_bound(double nu, double x);
double log2_bessel_J_bound(double nu, double x);

}  // namespace rpart
