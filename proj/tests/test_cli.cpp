#include "doctest.h"
#include "rpart/cli.hpp"
#include "rpart/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace rpart;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("partitions both mode certifies p(200)") {
  const Outcome o = run_cli({"partitions", "--r", "1", "--n", "200", "--mode", "both", "--json"});
  CHECK(o.code == cli::kExitOk);
  const auto recs = lines(o.out);
  REQUIRE(recs.size() == 1);
  const ReportRecord rec = from_json_line(recs[0]);
  CHECK(rec.rounded == "3972999029388");
  CHECK(rec.certified == true);
  CHECK(rec.cmd == "partitions");
}

TEST_CASE("partitions analytic p_24(1)") {
  const Outcome o = run_cli({"partitions", "--r", "24", "--n", "1", "--mode", "analytic", "--json"});
  CHECK(o.code == cli::kExitOk);
  const ReportRecord rec = from_json_line(lines(o.out).at(0));
  CHECK(rec.rounded == "24");
  CHECK_FALSE(rec.certified.has_value());
  const Outcome text = run_cli({"partitions", "--r", "24", "--n", "1", "--mode", "analytic"});
  CHECK(text.out.rfind("p_24(1) = 24", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({"partitions", "--r", "25", "--n", "1"}).code == cli::kExitUsage);
  CHECK(run_cli({"partitions", "--r", "3"}).code == cli::kExitUsage);
  CHECK(run_cli({"partitions", "--r", "3", "--n", "5", "--n-max", "2"}).code == cli::kExitUsage);
  CHECK(run_cli({"partitions", "--r", "3", "--n", "5", "--mode", "fast"}).code == cli::kExitUsage);
  CHECK(run_cli({"kloosterman", "--m24", "0", "--n24", "24", "--c", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"kloosterman", "--m24", "0", "--n24", "24"}).code == cli::kExitUsage);
  CHECK(run_cli({"coeff", "--k2", "4", "--m24", "0", "--n24", "24"}).code == cli::kExitUsage);
  CHECK(run_cli({"verify", "bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
}

TEST_CASE("help exits 0") {
  const Outcome o = run_cli({"--help"});
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("partitions") != std::string::npos);
}

TEST_CASE("kloosterman values") {
  const Outcome o = run_cli({"kloosterman", "--m24", "0", "--n24", "24", "--c", "2", "--json"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.out.find("\"re\":\"-1.0") != std::string::npos);
  CHECK(o.out.find("\"phi\":1") != std::string::npos);

  const Outcome e = run_cli({"kloosterman", "--m24", "-1", "--n24", "23", "--c", "1"});
  REQUIRE(e.code == cli::kExitOk);
  CHECK(e.out.find("7.0710678118654752440") != std::string::npos);
  CHECK(e.out.find("-7.0710678118654752440") != std::string::npos);
  CHECK(e.out.find("phi(c) = 1") != std::string::npos);
}

TEST_CASE("coeff subcommand") {
  const Outcome o = run_cli({"coeff", "--k2", "5", "--m24", "-23", "--n24", "1", "--json"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.out.find("\"re\":\"-9.99") != std::string::npos);

  const Outcome fixed = run_cli({"coeff", "--k2", "5", "--m24", "1", "--n24", "1", "--c-max", "50"});
  REQUIRE(fixed.code == cli::kExitOk);
  CHECK(fixed.out.find("c_max 50") != std::string::npos);

  const Outcome csv = run_cli({"coeff", "--k2", "28", "--m24", "48", "--n24", "24", "--terms", "--csv", "--c-max", "5"});
  REQUIRE(csv.code == cli::kExitOk);
  CHECK(lines(csv.out).size() == 6);
}

TEST_CASE("exact mode sweep") {
  const Outcome o = run_cli({"partitions", "--r", "3", "--n", "0", "--n-max", "5", "--mode", "exact", "--json"});
  REQUIRE(o.code == cli::kExitOk);
  const auto recs = lines(o.out);
  REQUIRE(recs.size() == 6);
  const char* want[] = {"1", "3", "9", "22", "51", "108"};
  for (int i = 0; i < 6; ++i) {
    const ReportRecord rec = from_json_line(recs[i]);
    CHECK(rec.n == i);
    CHECK(rec.rounded == want[i]);
    CHECK_FALSE(rec.analytic_re.has_value());
  }
}

TEST_CASE("threads do not change results") {
  const Outcome one = run_cli({"partitions", "--r", "7", "--n", "1", "--n-max", "12", "--mode", "both", "--json"});
  const Outcome four =
      run_cli({"partitions", "--r", "7", "--n", "1", "--n-max", "12", "--mode", "both", "--json", "--threads", "4"});
  REQUIRE(one.code == cli::kExitOk);
  REQUIRE(four.code == cli::kExitOk);
  const auto a = lines(one.out), b = lines(four.out);
  REQUIRE(a.size() == 12);
  REQUIRE(b.size() == 12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ReportRecord x = from_json_line(a[i]), y = from_json_line(b[i]);
    x.ms = y.ms = "";
    CHECK(x == y);
  }
}

TEST_CASE("CSV outputs") {
  const Outcome rows = run_cli({"partitions", "--r", "2", "--n", "1", "--n-max", "3", "--mode", "both", "--csv"});
  REQUIRE(rows.code == cli::kExitOk);
  const auto r = lines(rows.out);
  REQUIRE(r.size() == 4);
  CHECK(r[0] == "cmd,r,n,analytic_re,analytic_im,rounded,margin,c_max,certified,ms");
  CHECK(r[3].find(",10,") != std::string::npos);

  const Outcome terms = run_cli({"partitions", "--r", "2", "--n", "3", "--terms", "--csv"});
  REQUIRE(terms.code == cli::kExitOk);
  const auto t = lines(terms.out);
  CHECK(t[0] == "r,n,c,term_re,term_im,bits");
  CHECK(t.size() > 30);
  CHECK(t[1].rfind("2,3,1,", 0) == 0);
}

TEST_CASE("config file mirrors flags and the command line wins") {
  const std::string path = "rpart_cli_test.ini";
  {
    std::ofstream f(path);
    f << "r=2\nn=4\nmode=both\njson=true\n";
  }
  const Outcome o = run_cli({"partitions", "--config", path, "--n", "5"});
  std::remove(path.c_str());
  REQUIRE(o.code == cli::kExitOk);
  const ReportRecord rec = from_json_line(lines(o.out).at(0));
  CHECK(rec.r == 2);
  CHECK(rec.n == 5);
  CHECK(rec.rounded == "36");
  CHECK(rec.certified == true);
}

TEST_CASE("verify identities") {
  const Outcome o = run_cli({"verify", "identities"});
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("[PASS] identities: B_14 = 7/6") != std::string::npos);
  CHECK(o.out.find("[PASS] identities: zeta(14)") != std::string::npos);
  CHECK(o.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify all --quick within a minute") {
  const auto t0 = std::chrono::steady_clock::now();
  const Outcome o = run_cli({"verify", "all", "--quick"});
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("total: ") != std::string::npos);
  CHECK(o.out.find(" 0 failed\n") != std::string::npos);
  CHECK(s < 60);
}
