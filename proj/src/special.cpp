#include "rpart/special.hpp"

#include <algorithm>
#include <cmath>

#include "rpart/errors.hpp"

namespace rpart {

namespace {

void require_order(HalfIntOrder nu) {
  if (nu.two_nu < 0) throw DomainError("Bessel order must be >= 0");
}

// |t| < 2^-(bits+slack) (|sum| + 2^-bits)
bool negligible(const Real& t_abs, const Real& sum_abs, Precision bits, int slack) {
  Real floor = sum_abs + ldexp(Real(1L, sum_abs.precision()), -static_cast<long>(bits));
  return t_abs < ldexp(floor, -static_cast<long>(bits) - slack);
}

// x cosh x - sinh x, by its Taylor series near zero where the closed form cancels.
Real x_cosh_minus_sinh(const Real& x) {
  const Precision p = x.precision();
  if (abs(x) < Real(1L, p)) {
    Real x2 = x * x;
    Real pw = x * x2;          // x^{2k+1}
    Real fact(6L, p);          // (2k+1)!
    Real sum(p);
    for (long k = 1; k < 10000; ++k) {
      Real term = pw * (2 * k) / fact;
      sum += term;
      if (abs(term) < ldexp(abs(sum), -static_cast<long>(p) - 4)) break;
      pw *= x2;
      fact *= (2 * k + 2) * (2 * k + 3);
    }
    return sum;
  }
  return x * cosh(x) - sinh(x);
}

long double x_cosh_minus_sinh_ld(long double x) {
  if (fabsl(x) < 1.0L) {
    const long double x2 = x * x;
    long double pw = x * x2, fact = 6.0L, sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
      const long double term = pw * (2 * k) / fact;
      sum += term;
      if (fabsl(term) < fabsl(sum) * 1e-21L) break;
      pw *= x2;
      fact *= static_cast<long double>((2 * k + 2) * (2 * k + 3));
    }
    return sum;
  }
  return x * coshl(x) - sinhl(x);
}

long double bessel_series_ld(HalfIntOrder nu, long double z, long double sign) {
  require_order(nu);
  if (z == 0.0L) return nu.two_nu == 0 ? 1.0L : 0.0L;
  const long double nu_v = nu.two_nu / 2.0L;
  long double t = powl(z / 2.0L, nu_v) / tgammal(nu_v + 1.0L);
  const long double x = sign * (z / 2.0L) * (z / 2.0L);
  long double sum = t;
  for (int p = 0; p < 100000; ++p) {
    t *= x * 2.0L / (static_cast<long double>(p + 1) * static_cast<long double>(2 * p + 2 + nu.two_nu));
    sum += t;
    if (fabsl(t) <= fabsl(sum) * 1e-22L && fabsl(x) < (p + 1) * (p + 1 + nu_v)) break;
  }
  return sum;
}

}  // namespace

Real HalfGamma::value(Precision prec) const {
  Real v(rational, prec + 8);
  if (has_sqrt_pi) v *= sqrt(Real::pi(prec + 8));
  return Real(v, prec);
}

HalfGamma gamma_half_exact(int two_x) {
  if (two_x < 1) throw DomainError("gamma_half needs x > 0");
  HalfGamma g{mpq_class(1), two_x % 2 == 1};
  // Gamma(x + 1) = x Gamma(x), starting from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi)
  for (int k = g.has_sqrt_pi ? 1 : 2; k < two_x; k += 2) g.rational *= mpq_class(k, 2);
  g.rational.canonicalize();
  return g;
}

Real gamma_half(int two_x, Precision prec) { return gamma_half_exact(two_x).value(prec); }

Complex bessel_J(HalfIntOrder nu, const Complex& z, const PrecisionContext& ctx) {
  require_order(nu);
  const Precision bits = ctx.bits;
  if (z.re.is_zero() && z.im.is_zero())
    return nu.two_nu == 0 ? Complex(1.0, 0.0, bits) : Complex(bits);

  // Terms peak near exp(|z|); carry that many extra bits through the cancellation.
  const double mag = z.abs().to_double();
  const Precision work = bits + static_cast<Precision>(std::ceil(mag * M_LOG2E)) + 16;
  Complex half{Real(z.re, work) / 2L, Real(z.im, work) / 2L};
  Complex t = nu.two_nu == 0 ? Complex(1.0, 0.0, work) : principal_pow(half, Real(nu.two_nu, work) / 2L);
  Real inv_gamma = Real(1L, work) / gamma_half(nu.two_nu + 2, work);
  t *= inv_gamma;
  Complex x = -(half * half);
  Complex sum = t;
  const double nu_v = nu.value();
  for (long p = 0; p < 1000000; ++p) {
    t *= x;
    // t_{p+1} = t_p x / ((p+1)(p+1+nu))
    const long den = (p + 1) * (2 * p + 2 + nu.two_nu);
    t.re *= 2L;
    t.im *= 2L;
    t.re /= den;
    t.im /= den;
    sum += t;
    if (mag * mag / 4 < (p + 1) * (p + 1 + nu_v) && negligible(t.abs(), sum.abs(), bits, 8)) break;
  }
  return {Real(sum.re, bits), Real(sum.im, bits)};
}

Real bessel_I(HalfIntOrder nu, const Real& z, const PrecisionContext& ctx, int cutoff_slack) {
  require_order(nu);
  if (z.sign() < 0) throw DomainError("bessel_I is evaluated for real z >= 0");
  const Precision bits = ctx.bits;
  if (z.is_zero()) return nu.two_nu == 0 ? Real(1L, bits) : Real(bits);

  const Precision work = bits + 16 + std::max(0, cutoff_slack - 8);
  Real half = Real(z, work) / 2L;
  Real t = nu.two_nu == 0 ? Real(1L, work) : pow(half, Real(nu.two_nu, work) / 2L);
  t /= gamma_half(nu.two_nu + 2, work);
  Real x = half * half;
  Real sum = t;
  const double zd = z.to_double();
  const double nu_v = nu.value();
  for (long p = 0; p < 1000000; ++p) {
    // t_{p+1} = t_p x / ((p+1)(p+1+nu))
    t *= x;
    t *= 2L;
    t /= (p + 1) * (2 * p + 2 + nu.two_nu);
    sum += t;
    if (zd * zd / 4 < (p + 1) * (p + 1 + nu_v) && negligible(t, sum, bits, cutoff_slack)) break;
  }
  return Real(sum, bits);
}

long double bessel_I_ld(HalfIntOrder nu, long double z) { return bessel_series_ld(nu, z, 1.0L); }
long double bessel_J_ld(HalfIntOrder nu, long double z) { return bessel_series_ld(nu, z, -1.0L); }

Real sinh_kernel(std::int64_t n, std::int64_t c, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("sinh_kernel needs n >= 1");
  if (c < 1) throw DomainError("sinh_kernel needs c >= 1");
  const Precision work = ctx.bits + 16;
  Real t = sqrt(Real(24 * n - 1, work) / 24L);
  Real mu = Real::pi(work) * sqrt(Real(2L, work) / 3L);
  Real x = mu * t / c;
  // (mu/c) cosh(x) / (2t^2) - sinh(x) / (2t^3) = (x cosh x - sinh x) / (2 t^3)
  Real value = x_cosh_minus_sinh(x) / (t * t * t * 2L);
  return Real(value, ctx.bits);
}

long double sinh_kernel_ld(std::int64_t n, std::int64_t c) {
  if (n < 1 || c < 1) throw DomainError("sinh_kernel needs n, c >= 1");
  const long double t = sqrtl((24.0L * n - 1.0L) / 24.0L);
  const long double mu = 3.141592653589793238462643383279502884L * sqrtl(2.0L / 3.0L);
  const long double x = mu * t / static_cast<long double>(c);
  return x_cosh_minus_sinh_ld(x) / (2.0L * t * t * t);
}

}  // namespace rpart
