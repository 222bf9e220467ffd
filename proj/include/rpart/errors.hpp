#pragma once

#include <stdexcept>
#include <string>

namespace rpart {

// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The requested accuracy could not be reached at the current precision or
// truncation; callers escalate the PrecisionContext and retry.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rpart
