#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

namespace rpart {

using ExactInteger = mpz_class;
using ExactRational = mpq_class;

// p_r(0..N) for one colour count r. Immutable once built.
struct PartitionTable {
  int r = 1;
  std::vector<ExactInteger> values;

  std::int64_t max_n() const { return static_cast<std::int64_t>(values.size()) - 1; }
  const ExactInteger& operator[](std::int64_t n) const { return values.at(static_cast<std::size_t>(n)); }
};

// p(n) by Euler's pentagonal recurrence.
ExactInteger p_exact(std::int64_t n);
// p(0..N) by the same recurrence.
std::vector<ExactInteger> p_exact_table(std::int64_t N);

// p_r(0..N) via n p_r(n) = r sum_{j=1}^n sigma_1(j) p_r(n-j).
PartitionTable p_r_exact_table(int r, std::int64_t N);

// Process-wide memo over p_r_exact_table; returns a table covering at least N.
std::shared_ptr<const PartitionTable> cached_partition_table(int r, std::int64_t N);

// Sum of e-th powers of the positive divisors of n.
ExactInteger sigma(unsigned e, std::int64_t n);

// B_k with B_1 = -1/2.
ExactRational bernoulli(int k);

}  // namespace rpart
