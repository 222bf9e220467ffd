#include "rpart/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpart/errors.hpp"
#include "rpart/exact.hpp"
#include "rpart/kloosterman.hpp"
#include "rpart/partitions.hpp"
#include "rpart/poincare.hpp"
#include "rpart/report.hpp"
#include "rpart/verify.hpp"

namespace rpart::cli {

namespace {

struct Options {
  int r = 0;
  std::int64_t n = -1;
  std::optional<std::int64_t> n_max;
  std::string mode = "analytic";
  int bits = 128;
  std::optional<std::int64_t> c_max;
  bool json = false;
  bool csv = false;
  bool terms = false;
  int threads = 1;
  std::int64_t m24 = 0;
  std::int64_t n24 = 0;
  std::int64_t c = 0;
  int k2 = 0;
  std::string suite;
  bool quick = false;
};

PrecisionContext context_from(const Options& o) {
  PrecisionContext ctx = default_context();
  ctx.bits = o.bits;
  if (o.c_max) {
    ctx.c_max_initial = *o.c_max;
    ctx.c_max_cap = std::max(ctx.c_max_cap, *o.c_max);
  }
  ctx.validate();
  return ctx;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed3(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

struct PartitionJob {
  ReportRecord record;
  std::vector<SeriesTerm> terms;
  std::string precision_failure;
};

PartitionJob partition_job(const Options& o, const PrecisionContext& ctx, std::int64_t n) {
  PartitionJob job;
  ReportRecord& rec = job.record;
  rec.r = o.r;
  rec.n = n;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (o.mode == "exact") {
      rec.rounded = (*cached_partition_table(o.r, n))[n].get_str();
    } else {
      CertifiedCount count = p_r_analytic({o.r, n, ctx}, o.mode == "both", o.terms);
      attach_analytic(rec, count);
      rec.certified = count.certified;
      job.terms = std::move(count.terms);
    }
  } catch (const PrecisionError& e) {
    job.precision_failure = e.what();
  }
  rec.ms = fixed3(elapsed_ms(t0));
  return job;
}

std::vector<PartitionJob> run_jobs(const Options& o, const PrecisionContext& ctx, std::int64_t lo, std::int64_t hi) {
  std::vector<PartitionJob> jobs(static_cast<std::size_t>(hi - lo + 1));
  const int workers = std::max(1, std::min<int>(o.threads, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i] = partition_job(o, ctx, lo + static_cast<std::int64_t>(i));
    return jobs;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < jobs.size();) {
        try {
          jobs[i] = partition_job(o, ctx, lo + static_cast<std::int64_t>(i));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return jobs;
}

std::string csv_field(const std::optional<std::string>& v) { return v.value_or(""); }

int cmd_partitions(const Options& o, std::ostream& out, std::ostream& err) {
  const PrecisionContext ctx = context_from(o);
  const std::int64_t hi = o.n_max.value_or(o.n);
  if (hi < o.n) throw DomainError("--n-max must be >= --n");
  cached_partition_table(o.r, hi);
  const std::vector<PartitionJob> jobs = run_jobs(o, ctx, o.n, hi);

  const bool term_csv = o.csv && o.terms;
  if (term_csv) out << term_table_csv_header() << '\n';
  if (o.csv && !o.terms) out << "cmd,r,n,analytic_re,analytic_im,rounded,margin,c_max,certified,ms\n";

  bool precision_failed = false, mismatch = false;
  for (const PartitionJob& job : jobs) {
    const ReportRecord& rec = job.record;
    if (!job.precision_failure.empty()) {
      precision_failed = true;
      err << "p_" << rec.r << "(" << rec.n << "): precision failure: " << job.precision_failure << '\n';
      continue;
    }
    if (rec.certified == false) {
      mismatch = true;
      err << "p_" << rec.r << "(" << rec.n << "): analytic value " << rec.rounded
          << " does not match the exact table\n";
    }
    if (term_csv) {
      write_term_table_csv(out, rec.r, rec.n, job.terms);
    } else if (o.csv) {
      out << rec.cmd << ',' << rec.r << ',' << rec.n << ',' << csv_field(rec.analytic_re) << ','
          << csv_field(rec.analytic_im) << ',' << rec.rounded << ',' << csv_field(rec.margin) << ','
          << (rec.c_max ? std::to_string(*rec.c_max) : "") << ','
          << (rec.certified ? (*rec.certified ? "true" : "false") : "") << ',' << rec.ms << '\n';
    } else if (o.json) {
      out << to_json_line(rec) << '\n';
    } else {
      out << "p_" << rec.r << "(" << rec.n << ") = " << rec.rounded;
      if (rec.analytic_re)
        out << "  analytic " << *rec.analytic_re << " + " << *rec.analytic_im << "i  margin " << *rec.margin
            << "  c_max " << *rec.c_max;
      if (rec.certified) out << (*rec.certified ? "  certified" : "  MISMATCH");
      out << "  (" << rec.ms << " ms)\n";
      if (o.terms)
        for (const SeriesTerm& t : job.terms)
          out << "  c = " << t.c << "  " << t.term.re.to_string() << " + " << t.term.im.to_string() << "i  ["
              << t.bits << " bits]\n";
    }
  }
  if (precision_failed) return kExitPrecision;
  return mismatch ? kExitFailure : kExitOk;
}

int cmd_kloosterman(const Options& o, std::ostream& out) {
  const PrecisionContext ctx = context_from(o);
  const auto t0 = std::chrono::steady_clock::now();
  const KloostermanValue v = kloosterman_sum({o.m24}, {o.n24}, o.c, ctx);
  const std::string re = v.value.re.to_string(), im = v.value.im.to_string();
  if (o.json) {
    nlohmann::json j{{"cmd", "kloosterman"}, {"m24", o.m24}, {"n24", o.n24}, {"c", o.c},
                     {"re", re},             {"im", im},      {"phi", v.term_count},
                     {"ms", fixed3(elapsed_ms(t0))}};
    out << j.dump() << '\n';
  } else {
    out << "A(" << RationalIndex24{o.m24}.to_string() << ", " << RationalIndex24{o.n24}.to_string() << "; " << o.c
        << ") = " << re << " + " << im << "i\nphi(c) = " << v.term_count << '\n';
  }
  return kExitOk;
}

int cmd_coeff(const Options& o, std::ostream& out) {
  PrecisionContext ctx = context_from(o);
  if (o.c_max) ctx.fixed_truncation = true;
  const auto t0 = std::chrono::steady_clock::now();
  const WeightIndexPair pair = WeightIndexPair::checked(o.k2, {o.m24});
  const CoefficientResult res = poincare_coefficient(pair, {o.n24}, ctx, o.terms);
  const std::string re = res.value.re.to_string(), im = res.value.im.to_string();
  if (o.csv && o.terms) {
    out << "c,term_re,term_im,bits\n";
    for (const SeriesTerm& t : res.terms)
      out << t.c << ',' << t.term.re.to_string() << ',' << t.term.im.to_string() << ',' << t.bits << '\n';
    return kExitOk;
  }
  if (o.json) {
    nlohmann::json j{{"cmd", "coeff"},  {"k2", o.k2},         {"m24", o.m24},
                     {"n24", o.n24},    {"re", re},           {"im", im},
                     {"c_max", res.c_max}, {"tail", format_decimal(res.tail_estimate)},
                     {"ms", fixed3(elapsed_ms(t0))}};
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << "c_{" << RationalIndex24{o.n24}.to_string() << "}(P_{" << o.k2 << "/2, " << RationalIndex24{o.m24}.to_string()
      << "}) = " << re << " + " << im << "i\nc_max " << res.c_max << "  tail " << format_decimal(res.tail_estimate)
      << "  bits " << res.bits << '\n';
  for (const SeriesTerm& t : res.terms)
    out << "  c = " << t.c << "  " << t.term.re.to_string() << " + " << t.term.im.to_string() << "i\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  vo.quick = o.quick;
  vo.ctx = context_from(o);
  const std::vector<SuiteReport> reports = run_verify(o.suite, vo);
  int failed = 0, passed = 0;
  for (const SuiteReport& rep : reports) {
    for (const Check& c : rep.checks)
      out << (c.passed ? "[PASS] " : "[FAIL] ") << rep.suite << ": " << c.name << "  (" << c.detail << ")\n";
    out << rep.suite << ": " << rep.passed() << " passed, " << rep.failed() << " failed ("
        << fixed3(rep.seconds) << " s)\n";
    passed += rep.passed();
    failed += rep.failed();
  }
  out << "total: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"r-colour partition numbers from Kloosterman-Bessel series", "rpart"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring any flag");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Options o;
  app.add_option("--r", o.r, "number of colours")->check(CLI::Range(1, 24));
  app.add_option("--n", o.n, "index n")->check(CLI::NonNegativeNumber);
  app.add_option("--n-max", o.n_max, "sweep n .. n-max");
  app.add_option("--mode", o.mode, "analytic | exact | both")->check(CLI::IsMember({"analytic", "exact", "both"}));
  app.add_option("--bits", o.bits, "working precision in bits")->check(CLI::Range(53, 1 << 20));
  app.add_option("--c-max", o.c_max, "truncation in c (fixed for coeff)")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  app.add_flag("--json", o.json, "one JSON object per line");
  app.add_flag("--csv", o.csv, "CSV output; the per-c term table with --terms");
  app.add_flag("--terms", o.terms, "keep the per-c series terms");
  app.add_option("--threads", o.threads, "worker threads for batch requests")->check(CLI::Range(1, 256));
  app.add_option("--m24", o.m24, "24 m");
  app.add_option("--n24", o.n24, "24 n");
  app.add_option("--c", o.c, "modulus c >= 1")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  app.add_option("--k2", o.k2, "2 k");
  app.add_flag("--quick", o.quick, "reduced verify ranges");

  auto* partitions = app.add_subcommand("partitions", "p_r(n) for one n or a range")->fallthrough();
  auto* kloost = app.add_subcommand("kloosterman", "generalized Kloosterman sum A(m,n;c)")->fallthrough();
  auto* coeff = app.add_subcommand("coeff", "Fourier coefficient c_n of P_{k,m}")->fallthrough();
  auto* verify = app.add_subcommand("verify", "run the self-check suites")->fallthrough();
  verify->add_option("suite", o.suite, "multiplier | kloosterman | bessel | identities | partitions | all")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto require = [&](bool ok, const char* what) {
    if (!ok) throw CLI::ValidationError(what);
  };
  try {
    if (partitions->parsed()) {
      require(o.r >= 1, "--r is required");
      require(o.n >= 0, "--n is required");
      return cmd_partitions(o, out, err);
    }
    if (kloost->parsed()) {
      require(app.count("--c") > 0, "--c is required");
      return cmd_kloosterman(o, out);
    }
    if (coeff->parsed()) {
      require(o.k2 > 0, "--k2 is required");
      return cmd_coeff(o, out);
    }
    return cmd_verify(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << '\n';
    return kExitPrecision;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace rpart::cli
