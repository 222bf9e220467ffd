#include "rpart/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rpart/errors.hpp"
#include "rpart/special.hpp"

namespace rpart {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Terms whose bound leaves this many bits of headroom or fewer go to long double.
constexpr double kLongDoubleBits = 56;

int accumulation_bits(double log2_leading, const PrecisionContext& ctx) {
  const double need = std::ceil(std::max(log2_leading, 0.0)) + ctx.guard_bits + 32;
  return std::max(ctx.bits, static_cast<int>(need));
}

Complex to_complex(std::complex<long double> z) {
  Complex r(64);
  mpfr_set_ld(r.re.get(), z.real(), MPFR_RNDN);
  mpfr_set_ld(r.im.get(), z.imag(), MPFR_RNDN);
  return r;
}

void require_index_match(RationalIndex24 m, RationalIndex24 n) {
  if (n.t <= 0) throw DomainError("coefficient index n must be positive, got " + n.to_string());
  if ((n.t - m.t) % 24 != 0)
    throw DomainError("index " + n.to_string() + " is not in Z + " + m.to_string());
}

// 2 pi i^{-k} (n/|m|)^{(k-1)/2} at `bits`, plus the Bessel argument 4 pi sqrt(|m| n).
struct Prefactor {
  Complex value;
  Real z;
  std::complex<long double> value_ld;
  long double z_ld;
  double log2_abs;
};

Prefactor bessel_prefactor(int two_k, RationalIndex24 m, RationalIndex24 n, Precision bits) {
  const std::int64_t am = m.t < 0 ? -m.t : m.t;
  Real ratio(mpq_class(static_cast<long>(n.t), static_cast<long>(am)), bits);
  Real power = pow(ratio, Real(two_k - 2, bits) / 4L);
  Real two_pi = Real::pi(bits) * 2L;
  // i^{-k} = exp(-i pi k / 2) = exp(2 pi i (-two_k) / 8)
  Complex value = unit_root(-two_k, 8, bits) * (two_pi * power);
  Real z = Real::pi(bits) * 4L * sqrt(Real(am * n.t, bits)) / 24L;
  Prefactor out{value, z, {value.re.to_long_double(), value.im.to_long_double()}, z.to_long_double(), 0};
  out.log2_abs = std::log2(2 * M_PI) +
                 (two_k - 2) / 4.0 * std::log2(static_cast<double>(n.t) / static_cast<double>(am));
  return out;
}

}  // namespace

WeightIndexPair WeightIndexPair::checked(int two_k, RationalIndex24 m) {
  if (two_k < 5) throw DomainError("weight must be at least 5/2");
  // k - 12m = (two_k - 24m) / 2 must be even
  if (((two_k - m.t) % 4 + 4) % 4 != 0)
    throw DomainError("k - 12m is not an even integer for k = " + std::to_string(two_k) + "/2, m = " +
                      m.to_string());
  return {two_k, m};
}

double log2_bessel_J_bound(double nu, double x) {
  if (x <= 0) return kNegInf;
  return nu * std::log2(x / 2) - std::lgamma(nu + 1) / M_LN2;
}

double log2_bessel_I_bound(double nu, double x) {
  if (x <= 0) return kNegInf;
  // I_nu(x) <= (x/2)^nu cosh(x) / Gamma(nu + 1)
  const double log2_cosh = (x + std::log1p(std::exp(-2 * x)) - M_LN2) / M_LN2;
  return log2_bessel_J_bound(nu, x) + log2_cosh;
}

std::int64_t default_c_max(RationalIndex24 m, RationalIndex24 n, const PrecisionContext& ctx) {
  const double span = static_cast<double>(std::llabs(n.t) + std::llabs(m.t));
  const auto policy = static_cast<std::int64_t>(std::ceil(8 * std::sqrt(span)));
  return std::max(ctx.c_max_initial, policy);
}

CoefficientResult sum_modulus_series(const ModulusSeries& series, std::int64_t c_initial,
                                     const PrecisionContext& ctx, bool keep_terms) {
  ctx.validate();
  const std::int64_t start = ctx.fixed_truncation ? ctx.c_max_initial : c_initial;
  if (start < 1) throw DomainError("truncation must include c = 1");
  if (start > ctx.c_max_cap) throw PrecisionError("initial truncation exceeds c_max_cap");

  const Precision bits = accumulation_bits(series.log2_bound(1), ctx);
  CoefficientResult out{Complex(bits), 0, 0, bits, {}};
  Complex checkpoint(bits);
  std::int64_t done = 0;

  auto extend = [&](std::int64_t to) {
    const double horizon = std::log2(static_cast<double>(to)) + 1;
    const std::int64_t half = to / 2;
    for (std::int64_t c = done + 1; c <= to; ++c) {
      const double headroom = series.log2_bound(c) + ctx.guard_bits + horizon;
      if (headroom <= kLongDoubleBits) {
        Complex t = to_complex(series.term_ld(c));
        out.value += t;
        if (keep_terms) out.terms.push_back({c, std::move(t), 64});
      } else {
        PrecisionContext sub = ctx;
        sub.bits = static_cast<int>(std::clamp<double>(std::ceil(headroom) + 8, 64, bits));
        Complex t = series.term(c, sub);
        out.value += t;
        if (keep_terms) out.terms.push_back({c, std::move(t), sub.bits});
      }
      if (c == half) checkpoint = out.value;
    }
    done = to;
  };

  if (ctx.fixed_truncation) {
    extend(start);
    out.c_max = start;
    out.tail_estimate = (out.value - checkpoint).abs().to_double();
    return out;
  }

  std::int64_t c_max = start;
  extend(c_max);
  while (true) {
    if (2 * c_max > ctx.c_max_cap)
      throw PrecisionError("truncation doubling passed c_max_cap = " + std::to_string(ctx.c_max_cap));
    checkpoint = out.value;
    extend(2 * c_max);
    c_max *= 2;
    out.tail_estimate = (out.value - checkpoint).abs().to_double();
    if (out.tail_estimate < ctx.truncation_tolerance) break;
  }
  out.c_max = c_max;
  return out;
}

CoefficientResult coeff_negative_m(WeightIndexPair p, RationalIndex24 n, const PrecisionContext& ctx,
                                   bool keep_terms) {
  p = WeightIndexPair::checked(p.two_k, p.m);
  if (p.m.t >= 0) throw DomainError("coeff_negative_m needs m < 0");
  require_index_match(p.m, n);

  const HalfIntOrder order{p.two_k - 2};
  const double nu = order.value();
  const double z = 4 * M_PI * std::sqrt(static_cast<double>(-p.m.t) * static_cast<double>(n.t)) / 24;
  const double log2_pref = std::log2(2 * M_PI) + (p.two_k - 2) / 4.0 *
                                                     std::log2(static_cast<double>(n.t) / static_cast<double>(-p.m.t));
  const Precision top = accumulation_bits(log2_pref + log2_bessel_I_bound(nu, z), ctx) + 16;
  const Prefactor pref = bessel_prefactor(p.two_k, p.m, n, top);

  ModulusSeries series;
  series.log2_bound = [&](std::int64_t c) { return pref.log2_abs + log2_bessel_I_bound(nu, z / c); };
  series.term = [&](std::int64_t c, const PrecisionContext& sub) {
    Complex a = kloosterman_sum(p.m, n, c, sub).value;
    Real bessel = bessel_I(order, Real(pref.z, sub.bits) / c, sub);
    Complex t = a * (bessel / c);
    return Complex(t * Complex(Real(pref.value.re, sub.bits), Real(pref.value.im, sub.bits)));
  };
  series.term_ld = [&](std::int64_t c) {
    const auto a = kloosterman_sum_ld(p.m, n, c, ctx);
    const long double bessel = bessel_I_ld(order, pref.z_ld / static_cast<long double>(c));
    return pref.value_ld * a * (bessel / static_cast<long double>(c));
  };
  return sum_modulus_series(series, default_c_max(p.m, n, ctx), ctx, keep_terms);
}

CoefficientResult coeff_positive_m(WeightIndexPair p, RationalIndex24 n, const PrecisionContext& ctx,
                                   bool keep_terms) {
  p = WeightIndexPair::checked(p.two_k, p.m);
  if (p.m.t <= 0) throw DomainError("coeff_positive_m needs m > 0");
  require_index_match(p.m, n);

  const HalfIntOrder order{p.two_k - 2};
  const double nu = order.value();
  const double z = 4 * M_PI * std::sqrt(static_cast<double>(p.m.t) * static_cast<double>(n.t)) / 24;
  const double log2_pref = std::log2(2 * M_PI) + (p.two_k - 2) / 4.0 *
                                                     std::log2(static_cast<double>(n.t) / static_cast<double>(p.m.t));
  const Precision top = accumulation_bits(log2_pref + log2_bessel_J_bound(nu, z), ctx) + 16;
  const Prefactor pref = bessel_prefactor(p.two_k, p.m, n, top);

  ModulusSeries series;
  series.log2_bound = [&](std::int64_t c) { return pref.log2_abs + log2_bessel_J_bound(nu, z / c); };
  series.term = [&](std::int64_t c, const PrecisionContext& sub) {
    Complex a = kloosterman_sum(p.m, n, c, sub).value;
    Complex arg(sub.bits);
    arg.re = Real(pref.z, sub.bits) / c;
    Complex bessel = bessel_J(order, arg, sub);
    Complex t = a * (bessel.re / c);
    return Complex(t * Complex(Real(pref.value.re, sub.bits), Real(pref.value.im, sub.bits)));
  };
  series.term_ld = [&](std::int64_t c) {
    const auto a = kloosterman_sum_ld(p.m, n, c, ctx);
    const long double bessel = bessel_J_ld(order, pref.z_ld / static_cast<long double>(c));
    return pref.value_ld * a * (bessel / static_cast<long double>(c));
  };
  CoefficientResult out = sum_modulus_series(series, default_c_max(p.m, n, ctx), ctx, keep_terms);
  if (p.m == n) out.value.re += Real(1L, out.value.re.precision());
  return out;
}

ExactRational eisenstein_coeff(int k, std::int64_t n) {
  if (k < 4 || k % 2 != 0) throw DomainError("Eisenstein coefficients need even k >= 4");
  if (n < 1) throw DomainError("Eisenstein coefficients need n >= 1");
  ExactRational value = -ExactRational(2 * k) / bernoulli(k) * ExactRational(sigma(k - 1, n));
  value.canonicalize();
  return value;
}

CoefficientResult eisenstein_kloosterman(int k, std::int64_t n, const PrecisionContext& ctx, bool keep_terms) {
  if (k < 4 || k % 2 != 0) throw DomainError("Eisenstein coefficients need even k >= 4");
  if (n < 1) throw DomainError("Eisenstein coefficients need n >= 1");

  // (-1)^{k/2} (2 pi)^k n^{k-1} / (k-1)!
  const double log2_pref = k * std::log2(2 * M_PI) + (k - 1) * std::log2(static_cast<double>(n)) -
                           std::lgamma(static_cast<double>(k)) / M_LN2;
  const Precision top = accumulation_bits(log2_pref, ctx) + 16;
  mpz_class n_pow, fact;
  mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k - 1));
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k - 1));
  Real pref = pow(Real::pi(top) * 2L, Real(k, top)) * Real(mpq_class(n_pow, fact), top);
  if ((k / 2) % 2 == 1) pref = -pref;
  const long double pref_ld = pref.to_long_double();
  const RationalIndex24 m{0}, idx = RationalIndex24::integer(n);

  ModulusSeries series;
  series.log2_bound = [&](std::int64_t c) { return log2_pref + (1 - k) * std::log2(static_cast<double>(c)); };
  series.term = [&](std::int64_t c, const PrecisionContext& sub) {
    Complex a = kloosterman_sum(m, idx, c, sub).value;
    Real scale = Real(pref, sub.bits) / pow(Real(c, sub.bits), Real(k, sub.bits));
    return Complex(a * scale);
  };
  series.term_ld = [&](std::int64_t c) {
    const auto a = kloosterman_sum_ld(m, idx, c, ctx);
    return a * (pref_ld / powl(static_cast<long double>(c), k));
  };
  return sum_modulus_series(series, default_c_max(m, idx, ctx), ctx, keep_terms);
}

Real zeta_from_bernoulli(int k, const ExactRational& b, Precision prec) {
  if (k < 2 || k % 2 != 0) throw DomainError("zeta_from_bernoulli needs even k >= 2");
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
  const ExactRational coeff = b / (ExactRational(fact) * 2);
  Real value = pow(Real::pi(prec + 16) * 2L, Real(k, prec + 16)) * Real(coeff, prec + 16);
  if ((k / 2 + 1) % 2 == 1) value = -value;
  return Real(value, prec);
}

Real zeta_even(int k, Precision prec) {
  if (k < 2 || k % 2 != 0) throw DomainError("zeta_even needs even k >= 2");
  return zeta_from_bernoulli(k, bernoulli(k), prec);
}

CoefficientResult poincare_coefficient(WeightIndexPair p, RationalIndex24 n, const PrecisionContext& ctx,
                                       bool keep_terms) {
  p = WeightIndexPair::checked(p.two_k, p.m);
  if (p.m.t < 0) return coeff_negative_m(p, n, ctx, keep_terms);
  if (p.m.t > 0) return coeff_positive_m(p, n, ctx, keep_terms);
  if (p.two_k % 4 != 0) throw DomainError("m = 0 needs an even integer weight");
  require_index_match(p.m, n);
  const ExactRational exact = eisenstein_coeff(p.two_k / 2, n.t / 24);
  CoefficientResult out{Complex(ctx.bits), 0, 0, ctx.bits, {}};
  out.value.re = Real(exact, ctx.bits);
  return out;
}

}  // namespace rpart
