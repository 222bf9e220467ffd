#include "rpart/precision.hpp"

#include <cmath>
#include <string>

#include "rpart/errors.hpp"

namespace rpart {

double PrecisionContext::identity_tolerance() const {
  return tolerance > 0 ? tolerance : std::ldexp(1.0, -bits / 2);
}

void PrecisionContext::validate() const {
  if (bits < 53) throw DomainError("precision must be at least 53 bits");
  if (!(rounding_margin > 0 && rounding_margin <= 0.5))
    throw DomainError("rounding margin must lie in (0, 0.5]");
  if (tolerance < 0 || !(truncation_tolerance > 0))
    throw DomainError("tolerances must be positive");
  if (c_max_initial < 1 || c_max_cap < c_max_initial)
    throw DomainError("need 1 <= c_max_initial <= c_max_cap");
  if (!(sample_im > 0)) throw DomainError("sample point must lie in the upper half plane");
  if (guard_bits < 8) throw DomainError("guard_bits must be at least 8");
}

PrecisionContext default_context() { return PrecisionContext{}; }

PrecisionContext escalate(const PrecisionContext& ctx) {
  if (ctx.escalations >= kMaxEscalations)
    throw PrecisionError("precision escalation limit (" + std::to_string(kMaxEscalations) +
                         ") reached at " + std::to_string(ctx.bits) + " bits");
  PrecisionContext next = ctx;
  next.bits = ctx.bits * 2;
  next.c_max_initial = ctx.c_max_initial * 2;
  if (next.c_max_initial > next.c_max_cap) next.c_max_initial = next.c_max_cap;
  next.escalations = ctx.escalations + 1;
  return next;
}

}  // namespace rpart
