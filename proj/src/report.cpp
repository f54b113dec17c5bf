#include <charconv>
#include <string>

#include "json.hpp"
#include "maximin/harness.hpp"

namespace maximin {

using nlohmann::json;

namespace {

// Shortest decimal form that reads back to the same double.
std::string number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string emit_csv(const AggregateReport& report) {
  std::string out = "instance,algorithm,arm_action,arm_response,mean_draws,se_draws\n";
  for (const CellReport& cell : report.cells) {
    const std::string prefix = csv_field(cell.instance) + "," + std::string(to_string(cell.algorithm)) + ",";
    for (const ArmSummary& a : cell.arms) {
      out += prefix + std::to_string(a.arm.action) + "," + std::to_string(a.arm.response) + "," +
             number(a.mean_draws) + "," + number(a.se_draws) + "\n";
    }
    // Summary row: mean_tau and error_rate take the mean_draws and se_draws columns.
    out += prefix + "TOTAL,," + number(cell.mean_tau) + "," + number(cell.error_rate) + "\n";
  }
  return out;
}

std::string emit_json(const AggregateReport& report) {
  json cells = json::array();
  for (const CellReport& cell : report.cells) {
    json arms = json::array();
    for (const ArmSummary& a : cell.arms)
      arms.push_back({{"action", a.arm.action},
                      {"response", a.arm.response},
                      {"mean_draws", a.mean_draws},
                      {"se_draws", a.se_draws}});
    cells.push_back({{"instance", cell.instance},
                     {"algorithm", std::string(to_string(cell.algorithm))},
                     {"row_sizes", cell.row_sizes},
                     {"reps", cell.reps},
                     {"mean_tau", cell.mean_tau},
                     {"se_tau", cell.se_tau},
                     {"error_rate", cell.error_rate},
                     {"errors", cell.errors},
                     {"cap_hits", cell.cap_hits},
                     {"arms", std::move(arms)}});
  }
  return json{{"cells", std::move(cells)}}.dump(2) + "\n";
}

}  // namespace

std::string emit(const AggregateReport& report, OutputFormat format) {
  return format == OutputFormat::csv ? emit_csv(report) : emit_json(report);
}

AggregateReport parse_report_json(std::string_view json_text) {
  AggregateReport report;
  try {
    const json doc = json::parse(json_text);
    for (const json& c : doc.at("cells")) {
      CellReport cell;
      cell.instance = c.at("instance").get<std::string>();
      cell.algorithm = parse_algorithm(c.at("algorithm").get<std::string>());
      cell.row_sizes = c.at("row_sizes").get<std::vector<std::size_t>>();
      cell.reps = c.at("reps").get<std::uint64_t>();
      cell.mean_tau = c.at("mean_tau").get<double>();
      cell.se_tau = c.at("se_tau").get<double>();
      cell.error_rate = c.at("error_rate").get<double>();
      cell.errors = c.at("errors").get<std::uint64_t>();
      cell.cap_hits = c.at("cap_hits").get<std::uint64_t>();
      for (const json& a : c.at("arms")) {
        cell.arms.push_back({{a.at("action").get<std::size_t>(), a.at("response").get<std::size_t>()},
                             a.at("mean_draws").get<double>(),
                             a.at("se_draws").get<double>()});
      }
      report.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

}  // namespace maximin
