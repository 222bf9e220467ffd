#include "doctest.h"
#include "rpart/errors.hpp"
#include "rpart/precision.hpp"

#include <cmath>

using namespace rpart;

TEST_CASE("default context") {
  const PrecisionContext ctx = default_context();
  CHECK(ctx.bits == 128);
  CHECK(ctx.rounding_margin == 0.25);
  CHECK(ctx.identity_tolerance() == doctest::Approx(std::ldexp(1.0, -64)));
  CHECK_NOTHROW(ctx.validate());
}

TEST_CASE("escalation doubles bits and truncation") {
  PrecisionContext ctx = default_context();
  const PrecisionContext next = escalate(ctx);
  CHECK(next.bits == 2 * ctx.bits);
  CHECK(next.c_max_initial == 2 * ctx.c_max_initial);
  CHECK(next.escalations == 1);
}

TEST_CASE("escalation stops after the limit") {
  PrecisionContext ctx = default_context();
  for (int i = 0; i < kMaxEscalations; ++i) {
    const PrecisionContext next = escalate(ctx);
    CHECK(next.bits > ctx.bits);
    CHECK(next.c_max_initial > ctx.c_max_initial);
    ctx = next;
  }
  CHECK_THROWS_AS(escalate(ctx), PrecisionError);
}

TEST_CASE("escalation respects the truncation cap") {
  PrecisionContext ctx = default_context();
  ctx.c_max_cap = 40;
  CHECK(escalate(ctx).c_max_initial == 40);
}

TEST_CASE("invalid contexts are rejected") {
  PrecisionContext ctx = default_context();
  ctx.bits = 40;
  CHECK_THROWS_AS(ctx.validate(), DomainError);
  ctx = default_context();
  ctx.rounding_margin = 0.7;
  CHECK_THROWS_AS(ctx.validate(), DomainError);
  ctx = default_context();
  ctx.sample_im = -1;
  CHECK_THROWS_AS(ctx.validate(), DomainError);
  ctx = default_context();
  ctx.c_max_initial = 0;
  CHECK_THROWS_AS(ctx.validate(), DomainError);
}
