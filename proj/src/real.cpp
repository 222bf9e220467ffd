#include "rpart/real.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <vector>

#include "rpart/errors.hpp"

namespace rpart {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

Precision max_prec(const Real& a, const Real& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Real::Real(Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, kRnd);
}

Real::Real(double value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, value, kRnd);
}

Real::Real(const mpz_class& value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, value.get_mpz_t(), kRnd);
}

Real::Real(const mpq_class& value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, value.get_mpq_t(), kRnd);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal value.
  *v_ = *other.v_;
  mpfr_init2(other.v_, MPFR_PREC_MIN);
}

Real::Real(const Real& other, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set(v_, other.v_, kRnd);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, kRnd);
  return r;
}

Real Real::from_string(const std::string& text, Precision prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, text.c_str(), 10, kRnd) != 0)
    throw DomainError("not a decimal number: " + text);
  return r;
}

mpz_class Real::round_to_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, kRnd);
  return z;
}

std::string Real::to_fixed(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Real::to_string() const {
  // Digits needed to round-trip the mantissa.
  const int digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

long Real::exponent2() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 2;
  return mpfr_get_exp(v_);
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, kRnd);
  return *this;
}

Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, kRnd);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), kRnd);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), kRnd);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), kRnd);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), kRnd);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.get(), a.get(), b, kRnd);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.get(), a.get(), b, kRnd);
  return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }

#define RPART_UNARY(name, fn)          \
  Real name(const Real& x) {           \
    Real r(x.precision());             \
    fn(r.get(), x.get(), kRnd);        \
    return r;                          \
  }

RPART_UNARY(abs, mpfr_abs)
RPART_UNARY(sqrt, mpfr_sqrt)
RPART_UNARY(exp, mpfr_exp)
RPART_UNARY(log, mpfr_log)
RPART_UNARY(sin, mpfr_sin)
RPART_UNARY(cos, mpfr_cos)
RPART_UNARY(sinh, mpfr_sinh)
RPART_UNARY(cosh, mpfr_cosh)

#undef RPART_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, kRnd);
  return r;
}

Precision Complex::precision() const { return std::max(re.precision(), im.precision()); }

Real Complex::norm() const { return re * re + im * im; }

Real Complex::abs() const {
  Real r(precision());
  mpfr_hypot(r.get(), re.get(), im.get(), kRnd);
  return r;
}

Real Complex::arg() const { return atan2(im, re); }

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }

Complex operator/(const Complex& a, const Complex& b) {
  Real den = b.norm();
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }

Complex exp(const Complex& z) {
  Real mag = exp(z.re);
  Complex u = expi(z.im);
  u *= mag;
  return u;
}

Complex expi(const Real& theta) {
  Real s(theta.precision()), c(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), kRnd);
  return {std::move(c), std::move(s)};
}

Complex unit_root(long long num, long long den, Precision prec) {
  if (den <= 0) throw DomainError("unit_root: denominator must be positive");
  long long j = num % den;
  if (j < 0) j += den;
  // Work with j/den in [-1/2, 1/2] so the argument passed to sin/cos is small.
  if (2 * j > den) j -= den;
  if (j == 0) return {Real(1L, prec), Real(prec)};
  if (2 * j == den) return {Real(-1L, prec), Real(prec)};
  if (4 * j == den) return {Real(prec), Real(1L, prec)};
  if (4 * j == -den) return {Real(prec), Real(-1L, prec)};
  Real theta = Real::pi(prec + 8);
  mpfr_mul_si(theta.get(), theta.get(), 2 * j, kRnd);
  mpfr_div_si(theta.get(), theta.get(), static_cast<long>(den), kRnd);
  Complex u = expi(theta);
  return {Real(u.re, prec), Real(u.im, prec)};
}

Complex principal_pow(const Complex& z, const Real& p) {
  if (z.re.is_zero() && z.im.is_zero()) throw DomainError("principal_pow: zero base");
  Real theta = z.arg();
  // The branch convention puts the negative real axis at arg = -pi.
  if (z.im.is_zero() && z.re.sign() < 0) theta = -Real::pi(z.precision());
  Real mag = pow(z.abs(), p);
  Complex u = expi(theta * p);
  u *= mag;
  return u;
}

}  // namespace rpart
