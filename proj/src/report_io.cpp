#include "hcw/report_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "hcw/error.hpp"

namespace hcw {
namespace {

using nlohmann::json;

json number(double value) { return std::isfinite(value) ? json(round_significant(value)) : json(nullptr); }

json optional_number(const std::optional<double>& value) { return value ? number(*value) : json(nullptr); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InvalidArgument(std::string("report is missing field '") + key + "'");
  return doc.at(key);
}

double number_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number()) throw InvalidArgument(std::string("report field '") + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> nullable_number_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) throw InvalidArgument(std::string("report field '") + key + "' must be a number or null");
  return v.get<double>();
}

std::string string_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_string()) throw InvalidArgument(std::string("report field '") + key + "' must be a string");
  return v.get<std::string>();
}

CurveSource parse_curve_source(const std::string& name) {
  if (name == "ed") return CurveSource::ExactDiag;
  if (name == "katsura") return CurveSource::Katsura;
  if (name == "data") return CurveSource::UserData;
  throw InvalidArgument("unknown curve_source '" + name + "'");
}

double parse_cell(const std::string& cell, std::size_t line) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("line " + std::to_string(line) + ": cannot parse number '" + cell + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
  (void)ec;
  return {buffer, ptr};
}

double round_significant(double value) {
  if (!std::isfinite(value)) return value;
  const std::string text = format_number(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
  row_text(header);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row_text(cells);
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  require(cells.size() == columns_, "CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

json to_json(const WitnessBound& bound) {
  return json{{"kind", std::string(witness_kind_name(bound.kind))},
              {"constant", number(bound.constant)},
              {"exponent", bound.exponent},
              {"inputs",
               {{"E0_per_site", optional_number(bound.inputs.e0_per_site)},
                {"EB_per_site", optional_number(bound.inputs.eb_per_site)},
                {"gamma", optional_number(bound.inputs.gamma)},
                {"gap", optional_number(bound.inputs.gap)}}}};
}

std::string validity_status(const WitnessReport& report) {
  if (report.bound.vacuous()) return "vacuous";
  if (!report.validity_t_max) return "exact";
  return report.approximation_limited ? "approximation_limited" : "within_window";
}

json to_json(const WitnessReport& report, std::optional<long long> seed) {
  json region = json::array();
  for (const auto& s : report.region) {
    region.push_back({{"T", number(s.temperature)},
                      {"C", number(s.heat_capacity)},
                      {"bound", number(s.bound)},
                      {"margin", number(s.margin)},
                      {"entangled", s.entangled}});
  }
  json crossings = json::array();
  for (double t : report.crossings) crossings.push_back(number(t));
  json doc{{"schema_version", kSchemaVersion},
           {"report", "witness"},
           {"bound", to_json(report.bound)},
           {"T_c", optional_number(report.critical_temperature)},
           {"crossings", crossings},
           {"curve_source", std::string(curve_source_name(report.curve_source))},
           {"region", region},
           {"validity", {{"t_max", optional_number(report.validity_t_max)}, {"status", validity_status(report)}}},
           {"warnings", report.warnings}};
  doc["seed"] = seed ? json(*seed) : json(nullptr);
  return doc;
}

json to_json(const EigencheckReport& report, std::optional<long long> seed) {
  json levels = json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"energy", number(l.energy)},
                      {"degeneracy", l.degeneracy},
                      {"max_product_overlap", number(l.max_product_overlap)}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"report", "eigencheck"},
           {"n_sites", report.n_sites},
           {"B", number(report.B)},
           {"degeneracy_tol", number(report.degeneracy_tol)},
           {"verdict_tol", number(report.verdict_tol)},
           {"levels", levels},
           {"min_gap_to_product", number(report.min_gap_to_product())},
           {"verdict", report.verdict}};
  doc["seed"] = seed ? json(*seed) : json(nullptr);
  return doc;
}

WitnessReport witness_report_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("report must be a JSON object");
  const json& version = field(doc, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    throw InvalidArgument("unsupported schema_version");
  }
  if (string_field(doc, "report") != "witness") throw InvalidArgument("not a witness report");

  WitnessReport report;
  const json& b = field(doc, "bound");
  report.bound.kind = parse_witness_kind(string_field(b, "kind"));
  report.bound.constant = number_field(b, "constant");
  const json& exponent = field(b, "exponent");
  if (!exponent.is_number_integer()) throw InvalidArgument("bound exponent must be an integer");
  report.bound.exponent = exponent.get<int>();
  const json& inputs = field(b, "inputs");
  report.bound.inputs = {nullable_number_field(inputs, "E0_per_site"), nullable_number_field(inputs, "EB_per_site"),
                         nullable_number_field(inputs, "gamma"), nullable_number_field(inputs, "gap")};
  if (report.bound.constant < 0.0) throw InvalidArgument("bound constant must be nonnegative");

  report.critical_temperature = nullable_number_field(doc, "T_c");
  const json& crossings = field(doc, "crossings");
  if (!crossings.is_array()) throw InvalidArgument("crossings must be an array");
  for (const auto& c : crossings) {
    if (!c.is_number()) throw InvalidArgument("crossings must hold numbers");
    report.crossings.push_back(c.get<double>());
  }
  report.curve_source = parse_curve_source(string_field(doc, "curve_source"));

  const json& region = field(doc, "region");
  if (!region.is_array()) throw InvalidArgument("region must be an array");
  for (const auto& s : region) {
    RegionSample sample;
    sample.temperature = number_field(s, "T");
    sample.heat_capacity = number_field(s, "C");
    sample.bound = number_field(s, "bound");
    sample.margin = number_field(s, "margin");
    const json& e = field(s, "entangled");
    if (!e.is_boolean()) throw InvalidArgument("entangled must be a boolean");
    sample.entangled = e.get<bool>();
    report.region.push_back(sample);
  }

  const json& validity = field(doc, "validity");
  report.validity_t_max = nullable_number_field(validity, "t_max");
  const std::string status = string_field(validity, "status");
  if (status != "exact" && status != "within_window" && status != "approximation_limited" && status != "vacuous") {
    throw InvalidArgument("unknown validity status '" + status + "'");
  }
  report.approximation_limited = status == "approximation_limited";

  const json& warnings = field(doc, "warnings");
  if (!warnings.is_array()) throw InvalidArgument("warnings must be an array");
  for (const auto& w : warnings) {
    if (!w.is_string()) throw InvalidArgument("warnings must hold strings");
    report.warnings.push_back(w.get<std::string>());
  }
  return report;
}

std::vector<Measurement> read_measurements_csv(std::istream& in) {
  std::vector<Measurement> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("T", 0) == 0) continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2 || cells.size() > 3) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected T,C[,sigma_C]");
    }
    Measurement m;
    m.temperature = parse_cell(cells[0], line_no);
    m.heat_capacity = parse_cell(cells[1], line_no);
    m.sigma = cells.size() == 3 ? parse_cell(cells[2], line_no) : 0.0;
    if (m.sigma < 0.0) throw InvalidArgument("line " + std::to_string(line_no) + ": sigma must be nonnegative");
    out.push_back(m);
  }
  return out;
}

}  // namespace hcw
