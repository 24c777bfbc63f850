#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "bw/fields.hpp"
#include "bw/linsys.hpp"
#include "bw/spin1.hpp"

namespace bw {

/// Invalid command/target/parameter combination (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // derive | verify | enumerate | spectrum
  std::string target;   // empty for spectrum
  ParameterSet params;
  std::optional<ModifiedCoeffs> coeffs;  // defaults to the standard point
  int momenta = 5;
  std::uint64_t seed = 1;
  std::string output;  // empty: stdout
  std::string format = "json";
};

struct RunOutcome {
  int exit_code = 0;  // 0 pass, 1 verification failure
  nlohmann::json report;
  std::string text;  // rendered in the requested format
};

/// Executes the pipeline; throws ConfigError for unsupported combinations.
RunOutcome run(const RunConfig& config);

/// Metric, sigma, gamma5 and epsilon conventions.
nlohmann::json conventions_json();

/// LaTeX document with one aligned equation per row, labeled by provenance.
std::string emit_latex(const LinearSystem& system);

/// Parses "x,y,z" into complex values; "re:im" gives a complex entry.
std::vector<cd> parse_complex_list(const std::string& text);

}  // namespace bw
