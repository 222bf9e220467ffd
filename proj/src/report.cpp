#include "rpart/report.hpp"

#include <cstdio>

#include "json.hpp"

#include "rpart/errors.hpp"

namespace rpart {

namespace {

using nlohmann::json;

template <class T>
json nullable(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> read_nullable(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json_line(const ReportRecord& rec) {
  json j;
  j["cmd"] = rec.cmd;
  j["r"] = rec.r;
  j["n"] = rec.n;
  j["analytic_re"] = nullable(rec.analytic_re);
  j["analytic_im"] = nullable(rec.analytic_im);
  j["rounded"] = rec.rounded;
  j["margin"] = nullable(rec.margin);
  j["c_max"] = nullable(rec.c_max);
  j["certified"] = nullable(rec.certified);
  j["ms"] = rec.ms;
  return j.dump();
}

ReportRecord from_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    ReportRecord rec;
    rec.cmd = j.at("cmd").get<std::string>();
    rec.r = j.at("r").get<int>();
    rec.n = j.at("n").get<std::int64_t>();
    rec.analytic_re = read_nullable<std::string>(j, "analytic_re");
    rec.analytic_im = read_nullable<std::string>(j, "analytic_im");
    rec.rounded = j.at("rounded").get<std::string>();
    rec.margin = read_nullable<std::string>(j, "margin");
    rec.c_max = read_nullable<std::int64_t>(j, "c_max");
    rec.certified = read_nullable<bool>(j, "certified");
    rec.ms = j.at("ms").get<std::string>();
    return rec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad report record: ") + e.what());
  }
}

void attach_analytic(ReportRecord& rec, const CertifiedCount& count) {
  rec.analytic_re = count.analytic.re.to_string();
  rec.analytic_im = count.analytic.im.to_string();
  rec.rounded = count.rounded.get_str();
  rec.margin = format_decimal(count.margin);
  rec.c_max = count.c_max;
}

std::string term_table_csv_header() { return "r,n,c,term_re,term_im,bits"; }

void write_term_table_csv(std::ostream& out, int r, std::int64_t n, const std::vector<SeriesTerm>& terms) {
  for (const auto& t : terms)
    out << r << ',' << n << ',' << t.c << ',' << t.term.re.to_string() << ',' << t.term.im.to_string() << ','
        << t.bits << '\n';
}

}  // namespace rpart
