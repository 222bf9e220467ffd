#include "rpart/partitions.hpp"

#include <cmath>
#include <string>

#include "rpart/errors.hpp"
#include "rpart/kloosterman.hpp"
#include "rpart/special.hpp"

namespace rpart {

namespace {

void require_colours(int r) {
  if (r < 1 || r > 24) throw DomainError("r must lie in [1, 24], got " + std::to_string(r));
}

// Rounds the real part and records the margin.
void round_into(CertifiedCount& out) {
  out.rounded = out.analytic.re.round_to_integer();
  out.margin = abs(out.analytic.re - Real(out.rounded, out.analytic.re.precision())).to_double();
}

bool acceptable(const CertifiedCount& out, const PrecisionContext& ctx) {
  const double re = std::fabs(out.analytic.re.to_double());
  const double im = std::fabs(out.analytic.im.to_double());
  return out.margin < ctx.rounding_margin && im < 1e-6 * re + ctx.rounding_margin;
}

void certify_against_table(CertifiedCount& out, int r, std::int64_t n) {
  out.certified = out.rounded == (*cached_partition_table(r, n))[n];
}

// Runs `attempt` under ctx, escalating until the rounded result is acceptable.
template <class Attempt>
CertifiedCount with_escalation(PrecisionContext ctx, Attempt attempt) {
  std::string last_failure;
  while (true) {
    try {
      CertifiedCount out = attempt(ctx);
      round_into(out);
      out.escalations = ctx.escalations;
      if (acceptable(out, ctx)) return out;
      last_failure = "rounding margin " + std::to_string(out.margin);
    } catch (const PrecisionError& e) {
      last_failure = e.what();
    }
    if (ctx.escalations >= kMaxEscalations)
      throw PrecisionError("no acceptable result after " + std::to_string(kMaxEscalations) +
                           " escalations: " + last_failure);
    ctx = escalate(ctx);
  }
}

CertifiedCount from_coefficient(CoefficientResult coeff, bool negate) {
  CertifiedCount out;
  out.analytic = negate ? -coeff.value : coeff.value;
  out.c_max = coeff.c_max;
  out.tail_estimate = coeff.tail_estimate;
  out.bits = coeff.bits;
  out.terms = std::move(coeff.terms);
  if (negate)
    for (auto& t : out.terms) t.term = -t.term;
  return out;
}

ModulusSeries classical_series(std::int64_t n, const PrecisionContext& ctx) {
  const RationalIndex24 m{-1}, idx{24 * n - 1};
  const double t = std::sqrt(n - 1.0 / 24.0);
  const double mu = M_PI * std::sqrt(2.0 / 3.0);
  const double log2_scale = -std::log2(M_PI * std::sqrt(2.0));

  ModulusSeries series;
  series.log2_bound = [=](std::int64_t c) {
    // x cosh x - sinh x <= (x^3 / 3) cosh x, |A_c| <= c
    const double x = mu * t / static_cast<double>(c);
    const double log2_kernel = std::log2(x * x * x / 3) + (x + std::log1p(std::exp(-2 * x)) - M_LN2) / M_LN2 -
                               std::log2(2 * t * t * t);
    return log2_scale + 1.5 * std::log2(static_cast<double>(c)) + log2_kernel;
  };
  series.term = [=](std::int64_t c, const PrecisionContext& sub) {
    // A_c(n) = e^{pi i/4} A(-1/24, n - 1/24; c)
    Complex a = unit_root(1, 8, sub.bits) * kloosterman_sum(m, idx, c, sub).value;
    Real scale = sqrt(Real(c, sub.bits)) * sinh_kernel(n, c, sub) /
                 (Real::pi(sub.bits) * sqrt(Real(2L, sub.bits)));
    return Complex(a * scale);
  };
  series.term_ld = [=, &ctx](std::int64_t c) {
    const std::complex<long double> eighth(0.707106781186547524400844362104849039L,
                                           0.707106781186547524400844362104849039L);
    const auto a = eighth * kloosterman_sum_ld(m, idx, c, ctx);
    const long double scale = sqrtl(static_cast<long double>(c)) * sinh_kernel_ld(n, c) /
                              (3.141592653589793238462643383279502884L * sqrtl(2.0L));
    return a * scale;
  };
  return series;
}

}  // namespace

CertifiedCount p_r_analytic(const PartitionRequest& req, bool certify, bool keep_terms) {
  require_colours(req.r);
  if (req.n < 0) throw DomainError("n must be >= 0");
  req.ctx.validate();
  if (req.n == 0) {
    CertifiedCount out;
    out.analytic = Complex(1.0, 0.0, req.ctx.bits);
    out.rounded = 1;
    out.bits = req.ctx.bits;
    if (certify) out.certified = true;
    return out;
  }

  const int r = req.r;
  const std::int64_t n = req.n;
  const RationalIndex24 m{-24 * n + r}, idx{r};
  const WeightIndexPair pair = WeightIndexPair::checked(4 + r, m);

  CertifiedCount out = with_escalation(req.ctx, [&](const PrecisionContext& ctx) {
    if (m.t == 0) {
      // r = 24, n = 1: P_{14,0} is the Eisenstein series E_14.
      CoefficientResult e = poincare_coefficient(pair, idx, ctx);
      return from_coefficient(std::move(e), true);
    }
    return from_coefficient(coeff_negative_m(pair, idx, ctx, keep_terms), true);
  });
  if (certify) certify_against_table(out, r, n);
  return out;
}

CertifiedCount p1_classical(std::int64_t n, const PrecisionContext& ctx, bool certify, bool keep_terms) {
  if (n < 1) throw DomainError("p1_classical needs n >= 1");
  ctx.validate();
  CertifiedCount out = with_escalation(ctx, [&](const PrecisionContext& c) {
    const std::int64_t c_initial = default_c_max({-(24 * n - 1)}, {1}, c);
    return from_coefficient(sum_modulus_series(classical_series(n, c), c_initial, c, keep_terms), false);
  });
  if (certify) certify_against_table(out, 1, n);
  return out;
}

PipelineComparison classical_vs_poincare(std::int64_t n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("consistency check needs n >= 1");
  PrecisionContext fixed = ctx;
  fixed.fixed_truncation = true;
  fixed.c_max_initial = 2 * default_c_max({-(24 * n - 1)}, {1}, ctx);
  if (fixed.c_max_cap < fixed.c_max_initial) fixed.c_max_cap = fixed.c_max_initial;

  CoefficientResult classical = sum_modulus_series(classical_series(n, fixed), fixed.c_max_initial, fixed);
  CoefficientResult poincare =
      coeff_negative_m(WeightIndexPair::checked(5, {-(24 * n - 1)}), {1}, fixed);
  PipelineComparison out{classical.value, -poincare.value, fixed.c_max_initial, 0};
  out.residual = (out.classical - out.poincare).abs().to_double();
  return out;
}

Zeta14Identity zeta14_from_identity(Precision prec) {
  // p_24(1) = -c_1(E_14) = (2k / B_k) sigma_13(1), so B_14 = 28 sigma_13(1) / p_24(1).
  const ExactInteger p24_1 = (*cached_partition_table(24, 1))[1];
  ExactRational b14 = ExactRational(28) * ExactRational(sigma(13, 1)) / ExactRational(p24_1);
  b14.canonicalize();
  return {p24_1, b14, zeta_from_bernoulli(14, b14, prec)};
}

ZeroExpansion expansion_of_zero(int r, std::int64_t n, const PrecisionContext& ctx, bool keep_terms) {
  require_colours(r);
  if (n < 1) throw DomainError("expansion_of_zero needs n >= 1");
  const WeightIndexPair pair = WeightIndexPair::checked(4 + r, {24 * n + r});
  ZeroExpansion out{0, coeff_positive_m(pair, {r}, ctx, keep_terms)};
  out.magnitude = out.coefficient.value.abs().to_double();
  return out;
}

}  // namespace rpart
