#include "doctest.h"
#include "rpart/errors.hpp"
#include "rpart/exact.hpp"

#include <functional>

using namespace rpart;

namespace {

// Partitions of n into parts <= cap, by direct enumeration.
long count_partitions(int n, int cap) {
  if (n == 0) return 1;
  long total = 0;
  for (int part = std::min(n, cap); part >= 1; --part) total += count_partitions(n - part, part);
  return total;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("p_exact examples") {
  CHECK(p_exact(0) == 1);
  CHECK(p_exact(5) == 7);
  CHECK(p_exact(200) == ExactInteger("3972999029388"));
  CHECK_THROWS_AS(p_exact(-1), DomainError);
}

TEST_CASE("p_exact matches enumeration up to 25") {
  const auto table = p_exact_table(25);
  for (int n = 0; n <= 25; ++n) CHECK(table[n] == count_partitions(n, n));
}

TEST_CASE("p_r_exact_table examples") {
  const auto t1 = p_r_exact_table(1, 5);
  const std::vector<ExactInteger> want1{1, 1, 2, 3, 5, 7};
  CHECK(t1.values == want1);
  const auto t2 = p_r_exact_table(2, 2);
  const std::vector<ExactInteger> want2{1, 2, 5};
  CHECK(t2.values == want2);
  CHECK(p_r_exact_table(24, 1)[1] == 24);
  CHECK(t1.max_n() == 5);
  CHECK_THROWS_AS(p_r_exact_table(0, 3), DomainError);
  CHECK_THROWS_AS(p_r_exact_table(25, 3), DomainError);
}

TEST_CASE("p_r tables equal r-fold self-convolutions of the p table") {
  const int N = 60;
  const auto base = p_exact_table(N);
  std::vector<ExactInteger> power(N + 1, 0);
  power[0] = 1;
  for (int r = 1; r <= 24; ++r) {
    std::vector<ExactInteger> next(N + 1, 0);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) next[i + j] += power[i] * base[j];
    power = std::move(next);
    const auto table = p_r_exact_table(r, N);
    CAPTURE(r);
    CHECK(table.values == power);
  }
}

TEST_CASE("cached tables grow and stay consistent") {
  const auto small = cached_partition_table(7, 10);
  const auto large = cached_partition_table(7, 40);
  CHECK(large->max_n() >= 40);
  for (int n = 0; n <= 10; ++n) CHECK((*small)[n] == (*large)[n]);
  CHECK(cached_partition_table(7, 5)->max_n() >= 40);
}

TEST_CASE("sigma examples and primes") {
  CHECK(sigma(3, 1) == 1);
  CHECK(sigma(1, 6) == 12);
  CHECK(sigma(13, 2) == 8193);
  CHECK(sigma(0, 12) == 6);
  CHECK_THROWS_AS(sigma(1, 0), DomainError);
  for (int p = 2; p < 100; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned e = 0; e <= 13; ++e) {
      ExactInteger pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
      CHECK(sigma(e, p) == 1 + pe);
    }
  }
}

TEST_CASE("bernoulli examples") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == ExactRational(-1, 2));
  CHECK(bernoulli(4) == ExactRational(-1, 30));
  CHECK(bernoulli(14) == ExactRational(7, 6));
  CHECK(bernoulli(3) == 0);
}

TEST_CASE("even Bernoulli numbers alternate in sign") {
  for (int j = 1; j <= 20; ++j) {
    const ExactRational b = bernoulli(2 * j);
    CAPTURE(j);
    CHECK(sgn(b) == (j % 2 == 1 ? 1 : -1));
  }
}
