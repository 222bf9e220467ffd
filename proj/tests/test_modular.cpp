#include "doctest.h"
#include "rpart/errors.hpp"
#include "rpart/modular.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace rpart;

namespace {

PrecisionContext ctx128() { return default_context(); }

ModularMatrix random_matrix(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> cd(1, bound), dd(-2 * bound, 2 * bound);
  std::int64_t c = cd(rng), d = dd(rng);
  while (std::gcd(c, d) != 1) d = dd(rng);
  ModularMatrix m = complete_bottom_row(c, d);
  return rng() % 2 ? kMinusI * m : m;
}

double rel(const Complex& a, const Complex& b) { return ((a - b).abs() / b.abs()).to_double(); }

}  // namespace

TEST_CASE("principal square root branch") {
  const Complex two = principal_sqrt(Complex(4.0, 0.0, 128));
  CHECK(two.re.to_double() == 2.0);
  CHECK(two.im.is_zero());
  const Complex mi = principal_sqrt(Complex(-1.0, 0.0, 128));
  CHECK(std::fabs(mi.re.to_double()) < 1e-35);
  CHECK(mi.im.to_double() == -1.0);
  const Complex e = principal_sqrt(Complex(0.0, 1.0, 128));
  CHECK(e.re.to_double() == doctest::Approx(std::sqrt(0.5)));
  CHECK(e.im.to_double() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("matrix completion") {
  CHECK(complete_bottom_row(1, 0) == kT);
  CHECK(complete_bottom_row(5, 2) == ModularMatrix{3, 1, 5, 2});
  CHECK_THROWS_AS(complete_bottom_row(4, 2), DomainError);
  CHECK_THROWS_AS(complete_bottom_row(0, 1), DomainError);
  CHECK_THROWS_AS(ModularMatrix::checked(1, 1, 1, 1), DomainError);
}

TEST_CASE("eta at i") {
  const Complex v = eta_eval(Complex(0.0, 1.0, 128), ctx128());
  CHECK(v.re.to_double() == doctest::Approx(0.76822542).epsilon(1e-8));
  CHECK(std::fabs(v.im.to_double()) < 1e-35);
  // T fixes i and v(T) sqrt(i) = 1.
  const Complex w = eta_eval(kT.act(Complex(0.0, 1.0, 128)), ctx128());
  CHECK(rel(w, v) < 1e-35);
}

TEST_CASE("eta high in the upper half plane is q^(1/24)(1 - q)") {
  PrecisionContext ctx = default_context();
  ctx.bits = 80;
  const Complex tau(0.3, 5.0, 80);
  const Complex q = exp(Complex(Real(80), Real::pi(80) * 2L) * tau);
  const Complex q24 = exp(Complex(Real(80), Real::pi(80) * 2L) * tau / Real(24L, 80));
  const Complex approx = q24 * (Complex(1.0, 0.0, 80) - q);
  CHECK(rel(eta_eval(tau, ctx), approx) < std::ldexp(1.0, -78));
}

TEST_CASE("product and pentagonal forms agree on a grid") {
  for (double x : {-0.5, -0.2, 0.0, 0.31, 0.49})
    for (double y : {0.87, 1.0, 1.6, 3.0}) {
      const Complex tau(x, y, 128);
      CHECK(rel(eta_product(tau, 128), eta_pentagonal(tau, 128)) < std::ldexp(1.0, 4 - 128));
    }
}

TEST_CASE("generator multipliers") {
  const auto ctx = ctx128();
  CHECK(eta_multiplier(kS, ctx).exponent() == 1);
  CHECK(eta_multiplier(kT, ctx).exponent() == 21);
  CHECK(eta_multiplier(kMinusI, ctx).exponent() == 6);
}

TEST_CASE("powers of S") {
  const auto ctx = ctx128();
  ModularMatrix m;
  for (int n = 1; n <= 30; ++n) {
    m = m * kS;
    CHECK(eta_multiplier(m, ctx).exponent() == n % 24);
  }
}

TEST_CASE("defining relation for random matrices") {
  const auto ctx = ctx128();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1, 1), uy(0.3, 2);
  for (int i = 0; i < 100; ++i) {
    const ModularMatrix m = random_matrix(rng, 50);
    const Complex tau(ux(rng), uy(rng), 128);
    CAPTURE(m.a);
    CAPTURE(m.c);
    CHECK(eta_transformation_residual(m, tau, ctx).to_double() < ctx.identity_tolerance());
  }
}

TEST_CASE("multiplier does not depend on the sample point") {
  std::mt19937_64 rng(11);
  PrecisionContext a = ctx128(), b = ctx128(), c = ctx128();
  b.sample_re = -0.4;
  b.sample_im = 1.2;
  c.sample_re = 0.45;
  c.sample_im = 0.95;
  for (int i = 0; i < 40; ++i) {
    const ModularMatrix m = random_matrix(rng, 300);
    const auto va = eta_multiplier(m, a);
    CHECK(va == eta_multiplier(m, b));
    CHECK(va == eta_multiplier(m, c));
  }
}

TEST_CASE("squared multiplier is a character") {
  const auto ctx = ctx128();
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    const ModularMatrix x = random_matrix(rng, 12), y = random_matrix(rng, 12);
    const int lhs = 2 * eta_multiplier(x * y, ctx).exponent();
    const int rhs = 2 * eta_multiplier(x, ctx).exponent() + 2 * eta_multiplier(y, ctx).exponent();
    CHECK((lhs - rhs) % 24 == 0);
  }
}

TEST_CASE("snap residual is small") {
  const MultiplierSnap s = eta_multiplier_snap(complete_bottom_row(997, 400), ctx128());
  CHECK(s.residual < 1e-10);
}

TEST_CASE("upper half plane is required") {
  CHECK_THROWS_AS(eta_eval(Complex(0.2, -1.0, 128), ctx128()), DomainError);
}
