#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rpart/partitions.hpp"

namespace rpart {

// One line of `partitions` output. Numeric values that are not small
// integers travel as decimal strings.
struct ReportRecord {
  std::string cmd = "partitions";
  int r = 1;
  std::int64_t n = 0;
  std::optional<std::string> analytic_re;  // absent in exact mode
  std::optional<std::string> analytic_im;
  std::string rounded;
  std::optional<std::string> margin;
  std::optional<std::int64_t> c_max;
  std::optional<bool> certified;  // set in both mode only
  std::string ms;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

std::string to_json_line(const ReportRecord& rec);
// Throws DomainError on a malformed line or missing key.
ReportRecord from_json_line(const std::string& line);

// Fills the analytic fields from a computed count.
void attach_analytic(ReportRecord& rec, const CertifiedCount& count);

std::string format_decimal(double v);

// Header and rows of the per-modulus term table.
std::string term_table_csv_header();
void write_term_table_csv(std::ostream& out, int r, std::int64_t n, const std::vector<SeriesTerm>& terms);

}  // namespace rpart
