#pragma once

#include <string>
#include <vector>

#include "rpart/precision.hpp"

namespace rpart {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;

  int passed() const;
  int failed() const;
};

struct VerifyOptions {
  bool quick = false;
  PrecisionContext ctx = default_context();
  unsigned seed = 20240611;
};

// multiplier, kloosterman, bessel, identities, partitions
const std::vector<std::string>& suite_names();

// Runs one suite, or every suite for "all". Throws DomainError for an unknown name.
std::vector<SuiteReport> run_verify(const std::string& name, const VerifyOptions& opts);

// Moebius function by trial division.
int moebius(long long c);

}  // namespace rpart
