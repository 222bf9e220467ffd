#include "rpart/exact.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "rpart/errors.hpp"

namespace rpart {

std::vector<ExactInteger> p_exact_table(std::int64_t N) {
  if (N < 0) throw DomainError("p(n) needs n >= 0");
  std::vector<ExactInteger> p(static_cast<std::size_t>(N) + 1);
  p[0] = 1;
  for (std::int64_t n = 1; n <= N; ++n) {
    ExactInteger acc = 0;
    for (std::int64_t j = 1;; ++j) {
      const std::int64_t g1 = j * (3 * j - 1) / 2;
      if (g1 > n) break;
      const std::int64_t g2 = j * (3 * j + 1) / 2;
      ExactInteger t = p[n - g1];
      if (g2 <= n) t += p[n - g2];
      if (j % 2 == 1)
        acc += t;
      else
        acc -= t;
    }
    p[n] = acc;
  }
  return p;
}

ExactInteger p_exact(std::int64_t n) { return p_exact_table(n).back(); }

PartitionTable p_r_exact_table(int r, std::int64_t N) {
  if (r < 1 || r > 24) throw DomainError("r must lie in [1, 24], got " + std::to_string(r));
  if (N < 0) throw DomainError("table size must be >= 0");
  std::vector<ExactInteger> sigma1(static_cast<std::size_t>(N) + 1);
  for (std::int64_t d = 1; d <= N; ++d)
    for (std::int64_t m = d; m <= N; m += d) sigma1[m] += d;

  PartitionTable t;
  t.r = r;
  t.values.resize(static_cast<std::size_t>(N) + 1);
  t.values[0] = 1;
  for (std::int64_t n = 1; n <= N; ++n) {
    ExactInteger acc = 0;
    for (std::int64_t j = 1; j <= n; ++j) acc += sigma1[j] * t.values[n - j];
    acc *= r;
    // exact by construction
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    t.values[n] = acc;
  }

  if (r == 1 && t.values != p_exact_table(N))
    throw std::logic_error("p_r table for r = 1 disagrees with the pentagonal recurrence");
  return t;
}

std::shared_ptr<const PartitionTable> cached_partition_table(int r, std::int64_t N) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const PartitionTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[r];
  if (!slot || slot->max_n() < N) slot = std::make_shared<const PartitionTable>(p_r_exact_table(r, N));
  return slot;
}

ExactInteger sigma(unsigned e, std::int64_t n) {
  if (n <= 0) throw DomainError("sigma needs n >= 1");
  ExactInteger acc = 0, pw;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d), e);
    acc += pw;
    const std::int64_t other = n / d;
    if (other != d) {
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(other), e);
      acc += pw;
    }
  }
  return acc;
}

ExactRational bernoulli(int k) {
  if (k < 0) throw DomainError("bernoulli needs k >= 0");
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  std::vector<ExactRational> B(static_cast<std::size_t>(k) + 1);
  B[0] = 1;
  for (int m = 1; m <= k; ++m) {
    ExactRational acc = 0;
    ExactInteger binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += binom * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B[m] = -acc / (m + 1);
    B[m].canonicalize();
  }
  return B[k];
}

}  // namespace rpart
