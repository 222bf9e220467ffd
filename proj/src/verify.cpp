#include "rpart/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "rpart/errors.hpp"
#include "rpart/exact.hpp"
#include "rpart/kloosterman.hpp"
#include "rpart/modular.hpp"
#include "rpart/partitions.hpp"
#include "rpart/poincare.hpp"
#include "rpart/special.hpp"

namespace rpart {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void add(SuiteReport& rep, std::string name, bool ok, std::string detail) {
  rep.checks.push_back({std::move(name), ok, std::move(detail)});
}

// Runs `body`, turning library exceptions into a failed check.
void guarded(SuiteReport& rep, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    add(rep, name, false, std::string("exception: ") + e.what());
  }
}

ModularMatrix random_matrix(std::mt19937_64& rng, std::int64_t c_bound) {
  std::uniform_int_distribution<std::int64_t> cd(1, c_bound), dd(-3 * c_bound, 3 * c_bound);
  std::bernoulli_distribution flip(0.5);
  std::int64_t c = cd(rng), d = dd(rng);
  while (std::gcd(c, d) != 1) d = dd(rng);
  ModularMatrix m = complete_bottom_row(c, d);
  return flip(rng) ? kMinusI * m : m;
}

SuiteReport multiplier_suite(const VerifyOptions& o) {
  SuiteReport rep{"multiplier", {}, 0};
  const auto& ctx = o.ctx;
  const double tol = ctx.identity_tolerance();

  struct Known {
    const char* name;
    ModularMatrix m;
    int exponent;
  };
  for (const Known& k : {Known{"v(S) = zeta24^1", kS, 1}, Known{"v(T) = zeta24^21", kT, 21},
                         Known{"v(-I) = zeta24^6", kMinusI, 6}}) {
    guarded(rep, k.name, [&] {
      const int e = eta_multiplier(k.m, ctx).exponent();
      add(rep, k.name, e == k.exponent, "exponent " + std::to_string(e));
    });
  }

  const int count = o.quick ? 20 : 100;
  guarded(rep, "transformation law", [&] {
    std::mt19937_64 rng(o.seed);
    const Complex tau(0.23, 0.91, ctx.bits);
    double worst = 0;
    for (int i = 0; i < count; ++i)
      worst = std::max(worst, eta_transformation_residual(random_matrix(rng, 50), tau, ctx).to_double());
    add(rep, "transformation law", worst < tol,
        std::to_string(count) + " matrices, max residual " + sci(worst) + " < " + sci(tol));
  });

  guarded(rep, "sample-point independence", [&] {
    std::mt19937_64 rng(o.seed + 1);
    PrecisionContext other = ctx;
    other.sample_re = -0.37;
    other.sample_im = 1.3;
    int mismatches = 0;
    const int trials = o.quick ? 10 : 40;
    for (int i = 0; i < trials; ++i) {
      const ModularMatrix m = random_matrix(rng, 200);
      if (!(eta_multiplier(m, ctx) == eta_multiplier(m, other))) ++mismatches;
    }
    add(rep, "sample-point independence", mismatches == 0,
        std::to_string(trials) + " matrices, " + std::to_string(mismatches) + " mismatches");
  });
  return rep;
}

SuiteReport kloosterman_suite(const VerifyOptions& o) {
  SuiteReport rep{"kloosterman", {}, 0};
  const auto& ctx = o.ctx;
  const double tol = ctx.identity_tolerance();

  guarded(rep, "symmetry", [&] {
    const std::int64_t n_max = o.quick ? 5 : 20, c_max = o.quick ? 20 : 50;
    double worst = 0;
    for (std::int64_t n = 1; n <= n_max; ++n)
      for (std::int64_t c = 1; c <= c_max; ++c)
        worst = std::max(worst, kloosterman_symmetry_check(n, c, ctx).to_double());
    add(rep, "symmetry", worst < tol,
        "n <= " + std::to_string(n_max) + ", c <= " + std::to_string(c_max) + ", max residual " + sci(worst));
  });

  guarded(rep, "Ramanujan sums", [&] {
    const std::int64_t c_max = o.quick ? 30 : 100;
    double worst = 0;
    for (std::int64_t c = 1; c <= c_max; ++c) {
      Complex a = kloosterman_sum({0}, {24}, c, ctx).value;
      a.re -= Real(static_cast<long>(moebius(c)), a.re.precision());
      worst = std::max(worst, a.abs().to_double());
    }
    add(rep, "Ramanujan sums", worst < tol, "A(0,1;c) = mu(c) for c <= " + std::to_string(c_max) +
                                                ", max error " + sci(worst));
  });

  guarded(rep, "trivial bound", [&] {
    bool ok = true;
    for (std::int64_t c : {1, 7, 12, 30, 49})
      for (RationalIndex24 m : {RationalIndex24{-23}, RationalIndex24{-1}, RationalIndex24{13}}) {
        const KloostermanValue v = kloosterman_sum(m, RationalIndex24{1}, c, ctx);
        ok = ok && v.value.abs().to_double() <= static_cast<double>(euler_phi(c)) * (1 + 1e-12);
      }
    add(rep, "trivial bound", ok, "|A(m,n;c)| <= phi(c)");
  });

  guarded(rep, "representative independence", [&] {
    double worst = 0;
    for (std::int64_t c : {2, 5, 9, 24})
      for (Representatives reps : {Representatives{1, 0}, Representatives{-2, 3}, Representatives{0, -1}}) {
        const Complex a = kloosterman_sum({-47}, {1}, c, ctx).value;
        const Complex b = kloosterman_sum({-47}, {1}, c, ctx, reps).value;
        worst = std::max(worst, (a - b).abs().to_double());
      }
    add(rep, "representative independence", worst < tol, "max difference " + sci(worst));
  });
  return rep;
}

SuiteReport bessel_suite(const VerifyOptions& o) {
  SuiteReport rep{"bessel", {}, 0};
  const auto& ctx = o.ctx;
  const double tol = ctx.identity_tolerance();

  guarded(rep, "I_{3/2} closed form", [&] {
    const int count = o.quick ? 12 : 50;
    const Precision hi = ctx.bits + 64;
    double worst = 0;
    for (int i = 0; i < count; ++i) {
      const double z = 1e-3 * std::pow(3e4, static_cast<double>(i) / (count - 1));
      Real zr(z, hi);
      // sqrt(2/(pi z)) (cosh z - sinh z / z)
      Real closed = sqrt(Real(2L, hi) / (Real::pi(hi) * zr)) * (cosh(zr) - sinh(zr) / zr);
      Real series = bessel_I(HalfIntOrder{3}, Real(z, ctx.bits), ctx);
      worst = std::max(worst, (abs(Real(series, hi) - closed) / closed).to_double());
    }
    add(rep, "I_{3/2} closed form", worst < tol,
        std::to_string(count) + " points in [1e-3, 30], max relative error " + sci(worst));
  });

  guarded(rep, "I/J relation", [&] {
    double worst = 0;
    for (int two_nu = 3; two_nu <= 26; ++two_nu)
      for (double x : {0.05, 1.0, 7.5, 25.0}) {
        // J_nu(i x) = e^{i pi nu / 2} I_nu(x)
        const Complex j = bessel_J(HalfIntOrder{two_nu}, Complex(0.0, x, ctx.bits), ctx);
        const Real i = bessel_I(HalfIntOrder{two_nu}, Real(x, ctx.bits), ctx);
        const Complex rhs = unit_root(two_nu, 8, ctx.bits) * i;
        worst = std::max(worst, ((j - rhs).abs() / i).to_double());
      }
    add(rep, "I/J relation", worst < tol, "orders 3/2 .. 13, max relative error " + sci(worst));
  });

  guarded(rep, "J_{1/2}(pi) = 0", [&] {
    const Complex j = bessel_J(HalfIntOrder{1}, Complex(Real::pi(ctx.bits), Real(ctx.bits)), ctx);
    const double v = j.abs().to_double();
    add(rep, "J_{1/2}(pi) = 0", v < tol, "|J| = " + sci(v));
  });
  return rep;
}

SuiteReport identities_suite(const VerifyOptions& o) {
  SuiteReport rep{"identities", {}, 0};
  const auto& ctx = o.ctx;

  guarded(rep, "p_24(1) = 24", [&] {
    const CertifiedCount p = p_r_analytic({24, 1, ctx}, true);
    add(rep, "p_24(1) = 24", p.rounded == 24 && p.certified.value_or(false), "rounded " + p.rounded.get_str());
  });

  guarded(rep, "B_14 = 7/6", [&] {
    const Zeta14Identity id = zeta14_from_identity(ctx.bits);
    const bool ok = id.b14 == ExactRational(7, 6) && id.b14 == bernoulli(14);
    add(rep, "B_14 = 7/6", ok, "B_14 = " + id.b14.get_str());

    Real partial(ctx.bits);
    for (long n = 100; n >= 1; --n) partial += pow(Real(n, ctx.bits), Real(-14L, ctx.bits));
    const double rel = (abs(id.zeta14 - partial) / partial).to_double();
    add(rep, "zeta(14)", rel < 1e-12, "relative difference to sum_{n<=100} n^-14: " + sci(rel));
  });

  guarded(rep, "Eisenstein cross-check", [&] {
    PrecisionContext fixed = ctx;
    fixed.fixed_truncation = true;
    fixed.c_max_initial = o.quick ? 200 : 1000;
    double worst = 0;
    for (int k : {4, 6, 8, 14})
      for (std::int64_t n = 1; n <= 5; ++n) {
        const double exact = eisenstein_coeff(k, n).get_d();
        const double approx = eisenstein_kloosterman(k, n, fixed).value.re.to_double();
        worst = std::max(worst, std::fabs(approx / exact - 1));
      }
    add(rep, "Eisenstein cross-check", worst < 0.01,
        "c_max = " + std::to_string(fixed.c_max_initial) + ", max relative error " + sci(worst));
  });

  guarded(rep, "expansions of zero", [&] {
    double worst = 0;
    const std::int64_t n_max = o.quick ? 2 : 5;
    for (int r : {12, 24})
      for (std::int64_t n = 1; n <= n_max; ++n) worst = std::max(worst, expansion_of_zero(r, n, ctx).magnitude);
    add(rep, "expansions of zero", worst < 1e-6,
        "r in {12, 24}, n <= " + std::to_string(n_max) + ", max |coefficient| " + sci(worst));
  });

  guarded(rep, "classical vs Poincare", [&] {
    std::vector<std::int64_t> ns{1, 10, 50};
    if (!o.quick) ns.insert(ns.end(), {100, 200});
    double worst = 0;
    for (std::int64_t n : ns) {
      const PipelineComparison cmp = classical_vs_poincare(n, ctx);
      worst = std::max(worst, cmp.residual / cmp.classical.abs().to_double());
    }
    add(rep, "classical vs Poincare", worst < 1e-6, "max relative difference " + sci(worst));
  });
  return rep;
}

SuiteReport partitions_suite(const VerifyOptions& o) {
  SuiteReport rep{"partitions", {}, 0};
  const auto& ctx = o.ctx;

  guarded(rep, "oracle sweep", [&] {
    std::vector<int> rs;
    if (o.quick)
      rs = {1, 2, 5, 12, 23, 24};
    else
      for (int r = 1; r <= 24; ++r) rs.push_back(r);
    const std::int64_t n_max = o.quick ? 15 : 60;
    int failures = 0, cases = 0;
    double worst = 0;
    for (int r : rs)
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const CertifiedCount p = p_r_analytic({r, n, ctx}, true);
        ++cases;
        worst = std::max(worst, p.margin);
        if (!p.certified.value_or(false) || !(p.margin < 0.25)) ++failures;
      }
    add(rep, "oracle sweep", failures == 0,
        std::to_string(cases) + " cases, " + std::to_string(failures) + " failures, max margin " + sci(worst));
  });

  std::vector<std::int64_t> ns{100};
  if (!o.quick) ns.push_back(200);
  for (std::int64_t n : ns) {
    const std::string name = "classical p(" + std::to_string(n) + ")";
    guarded(rep, name, [&] {
      const CertifiedCount p = p1_classical(n, ctx, true);
      add(rep, name, p.certified.value_or(false) && p.margin < 1e-3,
          p.rounded.get_str() + ", margin " + sci(p.margin));
    });
  }
  return rep;
}

}  // namespace

int SuiteReport::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.passed; }));
}

int SuiteReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"multiplier", "kloosterman", "bessel", "identities", "partitions"};
  return names;
}

int moebius(long long c) {
  if (c < 1) throw DomainError("moebius needs c >= 1");
  int mu = 1;
  for (long long p = 2; p * p <= c; ++p) {
    if (c % p != 0) continue;
    c /= p;
    if (c % p == 0) return 0;
    mu = -mu;
  }
  return c > 1 ? -mu : mu;
}

std::vector<SuiteReport> run_verify(const std::string& name, const VerifyOptions& opts) {
  static const std::vector<std::pair<std::string, SuiteReport (*)(const VerifyOptions&)>> table{
      {"multiplier", multiplier_suite}, {"kloosterman", kloosterman_suite}, {"bessel", bessel_suite},
      {"identities", identities_suite}, {"partitions", partitions_suite}};
  std::vector<SuiteReport> out;
  for (const auto& [suite, fn] : table) {
    if (name != "all" && name != suite) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep = fn(opts);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rep));
  }
  if (out.empty()) throw DomainError("unknown verify suite '" + name + "'");
  return out;
}

}  // namespace rpart
