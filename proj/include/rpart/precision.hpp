#pragma once

#include <cstdint>

namespace rpart {

// Numerical policy threaded explicitly through every analytic routine.
struct PrecisionContext {
  int bits = 128;                       // working mantissa precision, >= 53
  std::int64_t c_max_initial = 32;      // floor for the initial truncation
  std::int64_t c_max_cap = 1000000;     // doubling never goes past this
  bool fixed_truncation = false;        // sum exactly c_max_initial terms
  double tolerance = 0.0;               // identity residual threshold; 0 -> 2^(-bits/2)
  double truncation_tolerance = 1.0 / 64;  // doubling-check threshold
  double rounding_margin = 0.25;
  int guard_bits = 32;                  // absolute accuracy target 2^-guard for series sums
  double sample_re = 0.1;               // multiplier snapping point
  double sample_im = 0.7;
  int escalations = 0;

  // 2^(-bits/2) unless overridden.
  double identity_tolerance() const;

  // Throws DomainError when an invariant is violated.
  void validate() const;
};

PrecisionContext default_context();

// bits and c_max_initial doubled; throws PrecisionError past kMaxEscalations.
PrecisionContext escalate(const PrecisionContext& ctx);

inline constexpr int kMaxEscalations = 6;

}  // namespace rpart
