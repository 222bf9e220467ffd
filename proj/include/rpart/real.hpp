#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>

namespace rpart {

using Precision = mpfr_prec_t;

// Owning MPFR value with an explicit precision. Binary operations produce a
// result at the larger of the operand precisions, so precision is never
// silently dropped.
class Real {
 public:
  explicit Real(Precision prec = 64);
  Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}
  Real(long value, Precision prec);
  Real(long long value, Precision prec) : Real(static_cast<long>(value), prec) {}
  Real(double value, Precision prec);
  Real(const mpz_class& value, Precision prec);
  Real(const mpq_class& value, Precision prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  // Copy of `other` rounded to `prec`.
  Real(const Real& other, Precision prec);
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real pi(Precision prec);
  static Real from_string(const std::string& text, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  mpz_class round_to_integer() const;
  // Fixed-point decimal with `digits` after the point.
  std::string to_fixed(int digits) const;
  // Scientific notation with enough digits to represent the mantissa.
  std::string to_string() const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // floor(log2|x|) + 1, or a large negative number for zero.
  long exponent2() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real ldexp(const Real& x, long e);

struct Complex {
  Real re;
  Real im;

  explicit Complex(Precision prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i, Precision prec) : re(r, prec), im(i, prec) {}

  Precision precision() const;
  Complex conj() const { return {re, -im}; }
  Real norm() const;  // |z|^2
  Real abs() const;
  Real arg() const;   // in (-pi, pi], the mpfr atan2 convention

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);

Complex exp(const Complex& z);
// exp(i * theta)
Complex expi(const Real& theta);
// exp(2 pi i * num / den), with the angle reduced exactly before evaluation.
Complex unit_root(long long num, long long den, Precision prec);
// z^p for real p, principal branch with -pi <= arg z < pi.
Complex principal_pow(const Complex& z, const Real& p);

}  // namespace rpart
