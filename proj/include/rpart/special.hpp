#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "rpart/precision.hpp"
#include "rpart/real.hpp"

namespace rpart {

// Order nu = two_nu / 2.
struct HalfIntOrder {
  int two_nu = 1;

  double value() const { return two_nu / 2.0; }
};

// Gamma(x) for x = two_x / 2 held as rational * (sqrt(pi) or 1).
struct HalfGamma {
  mpq_class rational;
  bool has_sqrt_pi = false;

  Real value(Precision prec) const;
};

HalfGamma gamma_half_exact(int two_x);
Real gamma_half(int two_x, Precision prec);

// Power series sum_p (-1)^p (z/2)^{2p+nu} / (p! Gamma(p+nu+1)), with (z/2)^nu
// on the principal branch.
Complex bessel_J(HalfIntOrder nu, const Complex& z, const PrecisionContext& ctx);

// All-positive series for real z >= 0. Terms stop once the next one falls
// below 2^-(bits + cutoff_slack) of the partial sum.
Real bessel_I(HalfIntOrder nu, const Real& z, const PrecisionContext& ctx, int cutoff_slack = 8);

// The same series in long double, for tail terms with small dynamic range.
long double bessel_I_ld(HalfIntOrder nu, long double z);
long double bessel_J_ld(HalfIntOrder nu, long double z);

// d/dn [sinh(mu sqrt(n - 1/24) / c) / sqrt(n - 1/24)], mu = pi sqrt(2/3).
Real sinh_kernel(std::int64_t n, std::int64_t c, const PrecisionContext& ctx);
long double sinh_kernel_ld(std::int64_t n, std::int64_t c);

}  // namespace rpart
