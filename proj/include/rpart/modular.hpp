#pragma once

#include <cstdint>

#include "rpart/precision.hpp"
#include "rpart/real.hpp"

namespace rpart {

// [a b; c d] with ad - bc = 1.
struct ModularMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  // Throws DomainError unless ad - bc = 1.
  static ModularMatrix checked(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  // (a tau + b) / (c tau + d)
  Complex act(const Complex& tau) const;

  friend bool operator==(const ModularMatrix&, const ModularMatrix&) = default;
};

ModularMatrix operator*(const ModularMatrix& x, const ModularMatrix& y);

inline constexpr ModularMatrix kS{1, 1, 0, 1};
inline constexpr ModularMatrix kT{0, -1, 1, 0};
inline constexpr ModularMatrix kMinusI{-1, 0, 0, -1};

// exp(2 pi i e / 24), 0 <= e < 24.
class UnityRoot24 {
 public:
  constexpr UnityRoot24() = default;
  constexpr explicit UnityRoot24(std::int64_t e) : e_(static_cast<int>(((e % 24) + 24) % 24)) {}

  constexpr int exponent() const { return e_; }
  constexpr UnityRoot24 pow(std::int64_t k) const {
    return UnityRoot24(static_cast<std::int64_t>(e_) * (((k % 24) + 24) % 24));
  }
  constexpr UnityRoot24 inverse() const { return UnityRoot24(-e_); }
  Complex value(Precision prec) const { return unit_root(e_, 24, prec); }

  friend constexpr UnityRoot24 operator*(UnityRoot24 x, UnityRoot24 y) {
    return UnityRoot24(x.e_ + y.e_);
  }
  friend constexpr bool operator==(UnityRoot24, UnityRoot24) = default;

 private:
  int e_ = 0;
};

// exp(log(z) / 2) with -pi <= arg z < pi; sqrt(-1) = -i.
Complex principal_sqrt(const Complex& z);

// [a b; c d] with a = d^{-1} mod c taken in [0, c) and b = (ad - 1)/c.
ModularMatrix complete_bottom_row(std::int64_t c, std::int64_t d);

// eta(tau) = zeta24^exponent * factor * eta(point), with point in the
// standard fundamental domain. Built from tau -> tau + 1 and tau -> -1/tau only.
struct EtaReduction {
  Complex point;
  int exponent = 0;
  Complex factor;
};
EtaReduction reduce_to_fundamental_domain(const Complex& tau);

// Truncated Euler product q^{1/24} prod (1 - q^n), no reduction.
Complex eta_product(const Complex& tau, Precision prec);
// Truncated pentagonal series q^{1/24} sum (-1)^k q^{k(3k-1)/2}, no reduction.
Complex eta_pentagonal(const Complex& tau, Precision prec);

// eta(tau) to ~2^(4-bits) relative error. Reduces tau to the fundamental
// domain, then evaluates both the product and the pentagonal series and
// throws PrecisionError if they disagree.
Complex eta_eval(const Complex& tau, const PrecisionContext& ctx);

// Eta multiplier v(M), snapped from the ratio eta(M tau0) / (sqrt(c tau0 + d) eta(tau0))
// at the context's sample point.
UnityRoot24 eta_multiplier(const ModularMatrix& m, const PrecisionContext& ctx);

// Snapping residual in radians from the last evaluation, exposed for diagnostics.
struct MultiplierSnap {
  UnityRoot24 root;
  double residual = 0;
};
MultiplierSnap eta_multiplier_snap(const ModularMatrix& m, const PrecisionContext& ctx);

inline constexpr double kSnapResidualLimit = 0.02;

// |eta(M tau) - v(M) sqrt(c tau + d) eta(tau)| / |eta(M tau)| at ctx.bits.
Real eta_transformation_residual(const ModularMatrix& m, const Complex& tau, const PrecisionContext& ctx);

}  // namespace rpart
