#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcw/eigencheck.hpp"
#include "hcw/witness.hpp"

namespace hcw {

inline constexpr int kSchemaVersion = 1;

/// Shortest-form rendering with 12 significant digits, independent of locale.
std::string format_number(double value);
/// `value` rounded to 12 significant digits.
double round_significant(double value);

/// Comma-separated rows with a header line; numbers via format_number.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  /// Row whose entries are preformatted (empty cells allowed).
  void row_text(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

nlohmann::json to_json(const WitnessBound& bound);
nlohmann::json to_json(const WitnessReport& report, std::optional<long long> seed = std::nullopt);
nlohmann::json to_json(const EigencheckReport& report, std::optional<long long> seed = std::nullopt);

/// Status string stored under validity.status: "exact", "within_window",
/// "approximation_limited" or "vacuous".
std::string validity_status(const WitnessReport& report);

/// Parses a witness report written by to_json. Throws InvalidArgument if a
/// required field is missing or has the wrong type.
WitnessReport witness_report_from_json(const nlohmann::json& doc);

/// Reads `T,C[,sigma_C]` rows after a header line. Blank lines are skipped.
std::vector<Measurement> read_measurements_csv(std::istream& in);

}  // namespace hcw
