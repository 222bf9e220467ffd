#include "rpart/modular.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "rpart/errors.hpp"

namespace rpart {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

std::int64_t checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError("matrix entry overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

// log2|q| for q = exp(2 pi i tau)
double log2_abs_q(const Complex& tau) { return -2.0 * M_PI * tau.im.to_double() / M_LN2; }

// Terms needed until |q|^n < 2^-bits.
std::int64_t terms_for(const Complex& tau, Precision bits) {
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(bits) / -log2_abs_q(tau))) + 1;
}

Complex q_power(const Complex& tau, long num, long den, Precision prec) {
  // exp(2 pi i tau num / den)
  Real two_pi = Real::pi(prec) * 2L;
  Complex z{-(tau.im * two_pi) * num / den, tau.re * two_pi * num / den};
  return exp(z);
}

void require_upper_half_plane(const Complex& tau) {
  if (tau.im.sign() <= 0) throw DomainError("eta needs Im(tau) > 0");
}

constexpr int kSnapBits = 96;

Complex eta_eval_impl(const Complex& tau, const PrecisionContext& ctx);

// eta at the snapping point, memoized for the most recent point.
Complex eta_at_sample(double re, double im, const PrecisionContext& ctx) {
  static std::mutex mu;
  static double cached_re = 0, cached_im = 0;
  static Complex cached(64);
  static bool valid = false;
  std::lock_guard<std::mutex> lock(mu);
  if (!valid || cached_re != re || cached_im != im || cached.precision() != ctx.bits) {
    cached = eta_eval_impl(Complex(re, im, ctx.bits), ctx);
    cached_re = re;
    cached_im = im;
    valid = true;
  }
  return cached;
}

}  // namespace

ModularMatrix ModularMatrix::checked(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (det != 1) throw DomainError("matrix is not in SL2(Z)");
  return {a, b, c, d};
}

Complex ModularMatrix::act(const Complex& tau) const {
  const Precision p = tau.precision();
  Complex num{tau.re * a + Real(b, p), tau.im * a};
  Complex den{tau.re * c + Real(d, p), tau.im * c};
  return num / den;
}

ModularMatrix operator*(const ModularMatrix& x, const ModularMatrix& y) {
  using W = __int128;
  return {checked_narrow(W(x.a) * y.a + W(x.b) * y.c), checked_narrow(W(x.a) * y.b + W(x.b) * y.d),
          checked_narrow(W(x.c) * y.a + W(x.d) * y.c), checked_narrow(W(x.c) * y.b + W(x.d) * y.d)};
}

Complex principal_sqrt(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) throw DomainError("principal_sqrt of zero");
  Real r = z.abs();
  if (z.re.sign() >= 0) {
    Real t = sqrt((r + z.re) / 2L);
    return {t, z.im / (t * 2L)};
  }
  Real t = sqrt((r - z.re) / 2L);
  Real re = abs(z.im) / (t * 2L);
  // Im z = 0 on the negative axis means arg z = -pi, so the root lies on -i R+.
  if (z.im.sign() > 0) return {std::move(re), t};
  return {std::move(re), -t};
}

ModularMatrix complete_bottom_row(std::int64_t c, std::int64_t d) {
  if (c <= 0) throw DomainError("complete_bottom_row needs c >= 1");
  if (std::gcd(c, d) != 1)
    throw DomainError("gcd(" + std::to_string(c) + ", " + std::to_string(d) + ") != 1");
  if (c == 1) return {0, -1, 1, d};
  // extended Euclid on (d mod c, c)
  std::int64_t r0 = ((d % c) + c) % c, r1 = c, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  const std::int64_t a = ((s0 % c) + c) % c;
  const __int128 ad = static_cast<__int128>(a) * d - 1;
  return ModularMatrix::checked(a, checked_narrow(ad / c), c, d);
}

EtaReduction reduce_to_fundamental_domain(const Complex& tau) {
  require_upper_half_plane(tau);
  const Precision p = tau.precision();
  EtaReduction red{tau, 0, Complex(1.0, 0.0, p)};
  Real one(1L, p);
  for (int iter = 0; iter < 100000; ++iter) {
    Real shift(p);
    mpfr_round(shift.get(), red.point.re.get());
    const long j = mpfr_get_si(shift.get(), kRnd);
    if (j != 0) {
      // eta(w + j) = zeta24^j eta(w)
      red.point.re -= shift;
      red.exponent = (red.exponent + static_cast<int>(((j % 24) + 24) % 24)) % 24;
    }
    if (!(red.point.norm() < one)) return red;
    // w = T w' with w' = -1/w: eta(w) = zeta24^21 sqrt(w') eta(w')
    red.point = -(Complex(one, Real(p)) / red.point);
    red.exponent = (red.exponent + 21) % 24;
    red.factor *= principal_sqrt(red.point);
  }
  throw PrecisionError("fundamental-domain reduction did not terminate");
}

Complex eta_product(const Complex& tau, Precision prec) {
  require_upper_half_plane(tau);
  const std::int64_t n_max = terms_for(tau, prec + 8);
  Complex q = q_power(tau, 1, 1, prec);
  Complex qn = q;
  Complex prod(1.0, 0.0, prec);
  Real one(1L, prec);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    prod *= Complex{one - qn.re, -qn.im};
    qn *= q;
  }
  return q_power(tau, 1, 24, prec) * prod;
}

Complex eta_pentagonal(const Complex& tau, Precision prec) {
  require_upper_half_plane(tau);
  const std::int64_t e_max = terms_for(tau, prec + 8);
  Complex q = q_power(tau, 1, 1, prec);
  Complex q3 = q * q * q;
  Complex sum(1.0, 0.0, prec);
  Complex qa = q, qb = q * q;        // q^{k(3k-1)/2}, q^{k(3k+1)/2}
  Complex s1 = q3 * q, s2 = s1 * q;  // ratios to the next k
  for (std::int64_t k = 1; k * (3 * k - 1) / 2 <= e_max; ++k) {
    if (k % 2 == 1) {
      sum -= qa;
      sum -= qb;
    } else {
      sum += qa;
      sum += qb;
    }
    qa *= s1;
    qb *= s2;
    s1 *= q3;
    s2 *= q3;
  }
  return q_power(tau, 1, 24, prec) * sum;
}

Complex eta_eval(const Complex& tau, const PrecisionContext& ctx) { return eta_eval_impl(tau, ctx); }

namespace {

Complex eta_eval_impl(const Complex& tau, const PrecisionContext& ctx) {
  require_upper_half_plane(tau);
  const Precision work = ctx.bits + 16;
  Complex t{Real(tau.re, work), Real(tau.im, work)};
  EtaReduction red = reduce_to_fundamental_domain(t);
  Complex via_product = eta_product(red.point, work);
  Complex via_series = eta_pentagonal(red.point, work);
  Real scale = via_series.abs();
  Real gap = (via_product - via_series).abs();
  if (gap > ldexp(scale, 4 - ctx.bits))
    throw PrecisionError("eta product and pentagonal series disagree");
  Complex value = UnityRoot24(red.exponent).value(work) * red.factor * via_series;
  return {Real(value.re, ctx.bits), Real(value.im, ctx.bits)};
}

}  // namespace

MultiplierSnap eta_multiplier_snap(const ModularMatrix& m, const PrecisionContext& ctx) {
  ModularMatrix::checked(m.a, m.b, m.c, m.d);
  if (m.c == 0) {
    // a = d = +-1 and M tau = tau + b d; sqrt(d) = -i when d = -1.
    const std::int64_t shift = m.b * m.d;
    return {UnityRoot24(m.d == 1 ? shift : shift + 6), 0.0};
  }
  // The snapped root is exact, so a fixed 96-bit working precision suffices.
  const Precision p = kSnapBits + 16;
  Complex tau0(ctx.sample_re, ctx.sample_im, p);
  PrecisionContext inner = ctx;
  inner.bits = static_cast<int>(p);

  EtaReduction red = reduce_to_fundamental_domain(m.act(tau0));
  // eta(M tau0) = zeta24^E * F * eta(w); the zeta24^E part stays exact.
  Complex top = red.factor * eta_eval(red.point, inner);
  Complex automorphy{tau0.re * m.c + Real(m.d, p), tau0.im * m.c};
  Complex ratio = top / (principal_sqrt(automorphy) * eta_at_sample(ctx.sample_re, ctx.sample_im, inner));

  const double turns = ratio.arg().to_double() / (2.0 * M_PI);
  const long e = std::lround(turns * 24.0);
  double residual = std::fabs(turns * 24.0 - static_cast<double>(e)) * (2.0 * M_PI / 24.0);
  const double mag = ratio.abs().to_double();
  if (!(std::fabs(mag - 1.0) < 1e-6)) residual = std::max(residual, kSnapResidualLimit);
  if (!(residual < kSnapResidualLimit))
    throw PrecisionError("eta multiplier snap residual " + std::to_string(residual) +
                         " rad exceeds limit; raise precision");
  return {UnityRoot24(e + red.exponent), residual};
}

UnityRoot24 eta_multiplier(const ModularMatrix& m, const PrecisionContext& ctx) {
  return eta_multiplier_snap(m, ctx).root;
}

Real eta_transformation_residual(const ModularMatrix& m, const Complex& tau, const PrecisionContext& ctx) {
  const Precision p = ctx.bits;
  Complex z{Real(tau.re, p), Real(tau.im, p)};
  Complex lhs = eta_eval(m.act(z), ctx);
  Complex automorphy{z.re * m.c + Real(m.d, p), z.im * m.c};
  Complex rhs = eta_multiplier(m, ctx).value(p) * principal_sqrt(automorphy) * eta_eval(z, ctx);
  return (lhs - rhs).abs() / lhs.abs();
}

}  // namespace rpart
