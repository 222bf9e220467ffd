#include "rpart/kloosterman.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "rpart/errors.hpp"

namespace rpart {

namespace {

void require_positive_modulus(std::int64_t c) {
  if (c <= 0) throw DomainError("Kloosterman sum needs c >= 1, got " + std::to_string(c));
}

// (-e tm c + tm a + tn d) mod 24c
std::int64_t phase_numerator(int e, std::int64_t tm, std::int64_t tn, std::int64_t a, std::int64_t d,
                             std::int64_t c) {
  const __int128 den = static_cast<__int128>(24) * c;
  __int128 num = -static_cast<__int128>(e) * tm * c + static_cast<__int128>(tm) * a +
                 static_cast<__int128>(tn) * d;
  num %= den;
  if (num < 0) num += den;
  return static_cast<std::int64_t>(num);
}

struct RowCache {
  std::mutex mu;
  std::unordered_map<std::int64_t, std::unique_ptr<const std::vector<std::int8_t>>> rows;
};

RowCache& row_cache() {
  static RowCache cache;
  return cache;
}

}  // namespace

std::string RationalIndex24::to_string() const {
  const std::int64_t g = std::gcd(t < 0 ? -t : t, std::int64_t{24});
  if (t == 0) return "0";
  if (g == 24) return std::to_string(t / 24);
  return std::to_string(t / g) + "/" + std::to_string(24 / g);
}

std::int64_t euler_phi(std::int64_t c) {
  require_positive_modulus(c);
  std::int64_t result = c, n = c;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<std::int8_t>& multiplier_row(std::int64_t c, const PrecisionContext& ctx) {
  require_positive_modulus(c);
  RowCache& cache = row_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.rows.find(c);
    if (it != cache.rows.end()) return *it->second;
  }
  auto row = std::make_unique<std::vector<std::int8_t>>(static_cast<std::size_t>(c), std::int8_t{-1});
  for (std::int64_t d = 0; d < c; ++d) {
    if (std::gcd(c, d) != 1) continue;
    (*row)[d] = static_cast<std::int8_t>(eta_multiplier(complete_bottom_row(c, d), ctx).exponent());
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  auto [it, inserted] = cache.rows.emplace(c, std::move(row));
  return *it->second;
}

KloostermanValue kloosterman_sum(RationalIndex24 m, RationalIndex24 n, std::int64_t c,
                                 const PrecisionContext& ctx) {
  require_positive_modulus(c);
  const Precision work = ctx.bits + 16;
  const bool trivial_multiplier = m.is_integer();
  const std::vector<std::int8_t>* row = trivial_multiplier ? nullptr : &multiplier_row(c, ctx);

  Complex sum(work);
  std::int64_t count = 0;
  for (std::int64_t d = 0; d < c; ++d) {
    if (std::gcd(c, d) != 1) continue;
    const std::int64_t a = complete_bottom_row(c, d).a;
    const int e = trivial_multiplier ? 0 : (*row)[d];
    sum += unit_root(phase_numerator(e, m.t, n.t, a, d, c), 24 * c, work);
    ++count;
  }
  return {Complex{Real(sum.re, ctx.bits), Real(sum.im, ctx.bits)}, c, count};
}

KloostermanValue kloosterman_sum(RationalIndex24 m, RationalIndex24 n, std::int64_t c,
                                 const PrecisionContext& ctx, Representatives reps) {
  require_positive_modulus(c);
  const Precision work = ctx.bits + 16;
  Complex sum(work);
  std::int64_t count = 0;
  for (std::int64_t r = 0; r < c; ++r) {
    if (std::gcd(c, r) != 1) continue;
    const std::int64_t d = r + reps.d_shift * c;
    const std::int64_t a = complete_bottom_row(c, r).a + reps.a_shift * c;
    const __int128 ad = static_cast<__int128>(a) * d - 1;
    ModularMatrix mat = ModularMatrix::checked(a, static_cast<std::int64_t>(ad / c), c, d);
    const int e = eta_multiplier(mat, ctx).exponent();
    sum += unit_root(phase_numerator(e, m.t, n.t, a, d, c), 24 * c, work);
    ++count;
  }
  return {Complex{Real(sum.re, ctx.bits), Real(sum.im, ctx.bits)}, c, count};
}

std::complex<long double> kloosterman_sum_ld(RationalIndex24 m, RationalIndex24 n, std::int64_t c,
                                             const PrecisionContext& ctx) {
  require_positive_modulus(c);
  const bool trivial_multiplier = m.is_integer();
  const std::vector<std::int8_t>* row = trivial_multiplier ? nullptr : &multiplier_row(c, ctx);
  const std::int64_t den = 24 * c;
  const long double two_pi = 6.283185307179586476925286766559005768L;
  long double re = 0, im = 0;
  for (std::int64_t d = 0; d < c; ++d) {
    if (std::gcd(c, d) != 1) continue;
    const std::int64_t a = complete_bottom_row(c, d).a;
    const int e = trivial_multiplier ? 0 : (*row)[d];
    std::int64_t j = phase_numerator(e, m.t, n.t, a, d, c);
    if (2 * j > den) j -= den;
    const long double theta = two_pi * static_cast<long double>(j) / static_cast<long double>(den);
    re += cosl(theta);
    im += sinl(theta);
  }
  return {re, im};
}

Real kloosterman_symmetry_check(std::int64_t n, std::int64_t c, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("symmetry check needs n >= 1");
  const Precision p = ctx.bits;
  Complex lhs = kloosterman_sum({-24 * n + 1}, {1}, c, ctx).value;
  Complex rhs = kloosterman_sum({-1}, {24 * n - 1}, c, ctx).value;
  // i^{-1/2} = zeta8^{-1}, i^{1/2} = zeta8
  lhs *= unit_root(-1, 8, p);
  rhs *= unit_root(1, 8, p);
  return (lhs - rhs).abs();
}

}  // namespace rpart
