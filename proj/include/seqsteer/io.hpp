// Scenario files and result tables.
//
// A scenario is a JSON document; see README.md for the schema. Unknown keys
// are rejected. Angles are radians, or strings of the form "deg:<number>".

#pragma once

#include "seqsteer/quantum.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace seqsteer {

/// Malformed user input. The message starts with the offending field.
class InputError : public std::invalid_argument {
 public:
  InputError(const std::string& field, const std::string& problem)
      : std::invalid_argument(field + ": " + problem), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses a finite decimal number. Throws InputError naming `field`.
double parse_number(const std::string& text, const std::string& field);

/// Parses a radian value or "deg:<number>". Throws InputError naming `field`.
double parse_angle(const nlohmann::json& value, const std::string& field);
double parse_angle(const std::string& text, const std::string& field);

/// Either the sigma_z/sigma_x pair or two explicit Bloch directions.
struct SettingsSpec {
  bool mub = true;
  std::array<BlochDirection, 2> directions = {BlochDirection::z(), BlochDirection::x()};

  friend bool operator==(const SettingsSpec&, const SettingsSpec&) = default;
};

struct EveSpec {
  double lambda = 1.0;
  SettingsSpec settings;
  double bias = 0.5;

  friend bool operator==(const EveSpec&, const EveSpec&) = default;
};

struct UnboundedSpec {
  double theta1 = 0.0;
  std::vector<double> lambdas;

  friend bool operator==(const UnboundedSpec&, const UnboundedSpec&) = default;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty: standard output

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

enum class Mode { chain, plan, unbounded };

/// Largest accepted unbounded-strategy depth (2^12 leaves).
inline constexpr std::size_t kMaxUnboundedDepth = 12;

struct Scenario {
  Mode mode = Mode::chain;
  StateSpec state;
  SettingsSpec alice;
  SettingsSpec bob;
  std::vector<EveSpec> eves;
  std::vector<double> targets;
  std::optional<UnboundedSpec> unbounded;
  OutputSpec output;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Validates and converts; throws InputError.
Scenario parse_scenario(const nlohmann::json& doc);
/// Reads and parses a file; unreadable or non-JSON input is an InputError.
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& s);

const char* to_string(Mode mode);
const char* to_string(OutputFormat format);

/// Cell of a result table: empty, text or number.
using Cell = std::variant<std::monostate, std::string, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Six significant digits, %g style.
std::string format_number(double v);

/// CSV with an optional leading "# ..." metadata line.
void write_csv(std::ostream& os, const Table& t, const std::string& metadata = {});
/// Array of objects keyed by column name; numbers rounded to 6 digits.
void write_json(std::ostream& os, const Table& t);

}  // namespace seqsteer
