#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "rpart/modular.hpp"
#include "rpart/precision.hpp"
#include "rpart/real.hpp"

namespace rpart {

// t/24, held exactly.
struct RationalIndex24 {
  std::int64_t t = 0;

  static constexpr RationalIndex24 integer(std::int64_t n) { return {24 * n}; }

  constexpr bool is_integer() const { return t % 24 == 0; }
  constexpr int sign() const { return (t > 0) - (t < 0); }
  double to_double() const { return static_cast<double>(t) / 24.0; }
  std::string to_string() const;

  constexpr RationalIndex24 operator-() const { return {-t}; }
  friend constexpr RationalIndex24 operator+(RationalIndex24 x, RationalIndex24 y) { return {x.t + y.t}; }
  friend constexpr RationalIndex24 operator-(RationalIndex24 x, RationalIndex24 y) { return {x.t - y.t}; }
  friend constexpr auto operator<=>(RationalIndex24, RationalIndex24) = default;
};

struct KloostermanValue {
  Complex value;
  std::int64_t c = 1;
  std::int64_t term_count = 0;  // phi(c)
};

// Alternative coset representatives: d runs over [d_shift c, (d_shift+1) c)
// and a is replaced by a + a_shift c. Any choice must give the same sum.
struct Representatives {
  std::int64_t d_shift = 0;
  std::int64_t a_shift = 0;
};

std::int64_t euler_phi(std::int64_t c);

// Exponent of v(M_{c,d}) for M_{c,d} = complete_bottom_row(c, d), 0 <= d < c,
// memoized per c. Entries for d not coprime to c are -1.
const std::vector<std::int8_t>& multiplier_row(std::int64_t c, const PrecisionContext& ctx);

// A(m, n; c) = sum_{d mod c, (c,d)=1} v(M)^{-24m} exp(2 pi i (m a + n d) / c)
KloostermanValue kloosterman_sum(RationalIndex24 m, RationalIndex24 n, std::int64_t c,
                                 const PrecisionContext& ctx);

// Same sum over alternative representatives; multipliers are recomputed from
// the shifted matrices rather than read from the cache.
KloostermanValue kloosterman_sum(RationalIndex24 m, RationalIndex24 n, std::int64_t c,
                                 const PrecisionContext& ctx, Representatives reps);

// Extended-precision floating evaluation of the same sum (64-bit mantissa).
// The phase numerators are still reduced exactly.
std::complex<long double> kloosterman_sum_ld(RationalIndex24 m, RationalIndex24 n, std::int64_t c,
                                             const PrecisionContext& ctx);

// |i^{-1/2} A(-n+1/24, 1/24; c) - i^{1/2} A(-1/24, n-1/24; c)|
Real kloosterman_symmetry_check(std::int64_t n, std::int64_t c, const PrecisionContext& ctx);

}  // namespace rpart
