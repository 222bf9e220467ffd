#include "doctest.h"
#include "rpart/errors.hpp"
#include "rpart/special.hpp"

#include <cmath>

using namespace rpart;

namespace {
const PrecisionContext kCtx = default_context();
const double kTol = kCtx.identity_tolerance();
const Precision kBits = kCtx.bits;

Real i32_closed(const Real& z) {
  return sqrt(Real(2L, z.precision()) / (Real::pi(z.precision()) * z)) * (cosh(z) - sinh(z) / z);
}
}  // namespace

TEST_CASE("half-integer gamma") {
  const Real sqrt_pi = sqrt(Real::pi(kBits));
  CHECK((abs(gamma_half(1, kBits) - sqrt_pi)).to_double() < 1e-35);
  CHECK((abs(gamma_half(5, kBits) - sqrt_pi * Real(0.75, kBits))).to_double() < 1e-35);
  CHECK(gamma_half(6, kBits).to_double() == 2.0);
  const HalfGamma g = gamma_half_exact(7);
  CHECK(g.has_sqrt_pi);
  CHECK(g.rational == mpq_class(15, 8));
  CHECK_THROWS_AS(gamma_half(0, kBits), DomainError);
}

TEST_CASE("Bessel values at zero") {
  CHECK(bessel_J(HalfIntOrder{3}, Complex(kBits), kCtx).abs().is_zero());
  CHECK(bessel_I(HalfIntOrder{3}, Real(kBits), kCtx).is_zero());
  CHECK(bessel_I(HalfIntOrder{0}, Real(kBits), kCtx).to_double() == 1.0);
}

TEST_CASE("J_{1/2}(pi) vanishes") {
  const Complex j = bessel_J(HalfIntOrder{1}, Complex(Real::pi(kBits), Real(kBits)), kCtx);
  CHECK(j.abs().to_double() < kTol);
}

TEST_CASE("J_13(1) satisfies the three-term recurrence") {
  const Complex one(1.0, 0.0, kBits);
  const Complex lo = bessel_J(HalfIntOrder{24}, one, kCtx);
  const Complex mid = bessel_J(HalfIntOrder{26}, one, kCtx);
  const Complex hi = bessel_J(HalfIntOrder{28}, one, kCtx);
  const Complex lhs = lo + hi;
  const Complex rhs = mid * Real(26L, kBits);
  CHECK(((lhs - rhs).abs() / rhs.abs()).to_double() < kTol);
}

TEST_CASE("I_{3/2}(1)") {
  CHECK(bessel_I(HalfIntOrder{3}, Real(1L, kBits), kCtx).to_double() == doctest::Approx(0.293525).epsilon(1e-6));
}

TEST_CASE("I_{3/2}(10) from J on the imaginary axis") {
  // i^{1-k} J_{3/2}(10 i) with k = 5/2, i^{-3/2} = exp(-3 pi i / 4)
  const Complex j = bessel_J(HalfIntOrder{3}, Complex(0.0, 10.0, kBits), kCtx);
  const Complex lhs = unit_root(-3, 8, kBits) * j;
  const Real rhs = bessel_I(HalfIntOrder{3}, Real(10L, kBits), kCtx);
  CHECK((abs(lhs.re - rhs) / rhs).to_double() < kTol);
  CHECK((abs(lhs.im) / rhs).to_double() < kTol);
}

TEST_CASE("I/J relation for the orders in use") {
  for (int two_nu = 3; two_nu <= 26; two_nu += 2)
    for (double x : {0.1, 1.0, 10.0}) {
      const Complex j = bessel_J(HalfIntOrder{two_nu}, Complex(0.0, x, kBits), kCtx);
      const Real i = bessel_I(HalfIntOrder{two_nu}, Real(x, kBits), kCtx);
      const Complex back = unit_root(-two_nu, 8, kBits) * j;
      CAPTURE(two_nu);
      CAPTURE(x);
      CHECK((abs(back.re - i) / i).to_double() < kTol);
      CHECK((abs(back.im) / i).to_double() < kTol);
    }
}

TEST_CASE("I_{3/2} closed form on [1e-3, 30]") {
  for (int i = 0; i < 50; ++i) {
    const double z = 1e-3 * std::pow(3e4, i / 49.0);
    const Real series = bessel_I(HalfIntOrder{3}, Real(z, kBits), kCtx);
    const Real closed = i32_closed(Real(z, kBits + 64));
    CAPTURE(z);
    CHECK((abs(Real(series, kBits + 64) - closed) / closed).to_double() < kTol);
  }
}

TEST_CASE("tightening the cutoff changes little") {
  for (double z : {0.5, 4.0, 25.0}) {
    const Real a = bessel_I(HalfIntOrder{5}, Real(z, kBits), kCtx, 8);
    const Real b = bessel_I(HalfIntOrder{5}, Real(z, kBits), kCtx, 16);
    CHECK((abs(a - b) / b).to_double() < std::ldexp(1.0, 8 - static_cast<int>(kBits)));
  }
}

TEST_CASE("long double Bessel series") {
  CHECK(static_cast<double>(bessel_I_ld(HalfIntOrder{3}, 1.0L)) == doctest::Approx(0.2935253263).epsilon(1e-9));
  const double j = static_cast<double>(bessel_J_ld(HalfIntOrder{1}, 1.0L));
  CHECK(j == doctest::Approx(std::sqrt(2 / M_PI) * std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("sinh kernel matches a finite difference") {
  const Precision p = 256;
  const Real mu = Real::pi(p) * sqrt(Real(2L, p) / 3L);
  auto f = [&](const Real& x) {
    Real t = sqrt(x - Real(1L, p) / 24L);
    return sinh(mu * t) / t;
  };
  const Real h(1e-6, p);
  const Real one(1L, p);
  const Real fd = (f(one + h) - f(one - h)) / (h * 2L);
  const Real k = sinh_kernel(1, 1, kCtx);
  const double rel_err = (abs(Real(k, p) - fd) / fd).to_double();
  CHECK(rel_err < 1e-8);
  CHECK(rel_err < 100 * 1e-12);
}

TEST_CASE("sinh kernel decays like c^-3") {
  const double k3 = sinh_kernel(1, 1000, kCtx).to_double();
  const double k4 = sinh_kernel(1, 10000, kCtx).to_double();
  CHECK(k3 / k4 == doctest::Approx(1000).epsilon(1e-4));
  // mu^3 / (6 c^3) in the limit
  const double mu = M_PI * std::sqrt(2.0 / 3.0);
  CHECK(k4 == doctest::Approx(mu * mu * mu / 6e12).epsilon(1e-6));
}

TEST_CASE("sinh kernel at n = 100") {
  CHECK(sinh_kernel(100, 1, kCtx).sign() > 0);
  CHECK(static_cast<double>(sinh_kernel_ld(100, 7)) ==
        doctest::Approx(sinh_kernel(100, 7, kCtx).to_double()).epsilon(1e-15));
  CHECK_THROWS_AS(sinh_kernel(0, 1, kCtx), DomainError);
}
