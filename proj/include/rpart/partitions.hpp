#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rpart/exact.hpp"
#include "rpart/poincare.hpp"
#include "rpart/precision.hpp"
#include "rpart/real.hpp"

namespace rpart {

struct PartitionRequest {
  int r = 1;
  std::int64_t n = 0;
  PrecisionContext ctx = default_context();
};

struct CertifiedCount {
  Complex analytic;
  ExactInteger rounded;
  double margin = 0;                 // |Re(analytic) - rounded|
  std::optional<bool> certified;     // set when compared against the exact table
  std::int64_t c_max = 0;
  double tail_estimate = 0;
  Precision bits = 0;
  int escalations = 0;
  std::vector<SeriesTerm> terms;
};

// p_r(n) = -c_{r/24} of P_{2 + r/2, -n + r/24}; m = 0 routes to the Eisenstein
// coefficient. Precision and truncation escalate until the value rounds with
// margin below ctx.rounding_margin.
CertifiedCount p_r_analytic(const PartitionRequest& req, bool certify = false, bool keep_terms = false);

// The classical sinh-kernel series for p(n).
CertifiedCount p1_classical(std::int64_t n, const PrecisionContext& ctx, bool certify = false,
                            bool keep_terms = false);

// Unrounded classical and Poincare-series values of p(n), summed to the same c_max.
struct PipelineComparison {
  Complex classical;
  Complex poincare;
  std::int64_t c_max = 0;
  double residual = 0;  // |classical - poincare|
};
PipelineComparison classical_vs_poincare(std::int64_t n, const PrecisionContext& ctx);

// B_14 and zeta(14) obtained from p_24(1) = 24 by inverting the Eisenstein
// coefficient -2k/B_k sigma_{k-1}(1) at k = 14.
struct Zeta14Identity {
  ExactInteger p24_1;
  ExactRational b14;
  Real zeta14;
};
Zeta14Identity zeta14_from_identity(Precision prec = 128);

// |c_{r/24}| of the cuspidal series P_{2 + r/2, n + r/24}.
struct ZeroExpansion {
  double magnitude = 0;
  CoefficientResult coefficient;
};
ZeroExpansion expansion_of_zero(int r, std::int64_t n, const PrecisionContext& ctx, bool keep_terms = false);

}  // namespace rpart
