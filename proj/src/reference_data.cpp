#include "ratdyn/reference_data.hpp"

#include <sstream>
#include <string>
#include <string_view>

#include "ratdyn/errors.hpp"

namespace ratdyn {

namespace detail {
extern const std::string_view kPeriodTwoCsv;
extern const std::string_view kChaoticCsv;
}  // namespace detail

namespace {

// Data lines only: comments and the header are skipped.
std::vector<std::vector<double>> parse_rows(std::string_view csv, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> values;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) values.push_back(std::stod(field));
    if (values.size() != columns) throw Error("reference table: malformed row: " + line);
    rows.push_back(std::move(values));
  }
  return rows;
}

}  // namespace

const std::vector<PeriodTwoRow>& period_two_table() {
  static const std::vector<PeriodTwoRow> table = [] {
    std::vector<PeriodTwoRow> out;
    for (const auto& v : parse_rows(detail::kPeriodTwoCsv, 10))
      out.push_back({static_cast<int>(v[0]), {{v[1], v[2]}, {v[3], v[4]}}, v[5] != 0.0,
                     {v[6], v[7]}, {v[8], v[9]}});
    return out;
  }();
  return table;
}

const std::vector<ChaoticRow>& chaotic_table() {
  static const std::vector<ChaoticRow> table = [] {
    std::vector<ChaoticRow> out;
    for (const auto& v : parse_rows(detail::kChaoticCsv, 7))
      out.push_back({static_cast<int>(v[0]), {{v[1], v[2]}, {v[3], v[4]}}, v[5] != 0.0, v[6]});
    return out;
  }();
  return table;
}

}  // namespace ratdyn
