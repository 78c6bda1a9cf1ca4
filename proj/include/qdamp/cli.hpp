#pragma once

// Command-line front end: configuration, the verification suite and the
// time-series generators. tools/qdamp.cpp only forwards to run().

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdamp/classical.hpp"
#include "qdamp/dissipative.hpp"
#include "qdamp/report.hpp"

namespace qdamp::cli {

enum class Command { kVerify, kEvolve, kClassical, kSqueeze };
enum class OutputFormat { kCsv, kJson };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Grid {
  double start = 0.0;
  double end = 0.0;
  std::size_t steps = 1;

  // steps + 1 evenly spaced points, start and end included.
  std::vector<double> points() const;
};

struct RunConfig {
  std::optional<Command> command;
  std::vector<dissipative::ModeSpec> modes{{"k0", 1.0, 1.0}};
  // Defaults depend on the command when unset.
  std::optional<Grid> time_grid;
  std::optional<std::size_t> dim;
  std::optional<double> tolerance;
  std::string output_path;  // empty: stdout
  std::optional<OutputFormat> output_format;
  classical::OscillatorParams oscillator;
  double dt = 1e-3;
  Grid zeta_grid{-1.0, 1.0, 8};
};

// Parses the JSON config document; unknown keys and wrong types are ConfigErrors.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& config);

std::string command_name(Command c);
Command parse_command(const std::string& name);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Header row, '.' decimal separator, 17 significant digits, '\n' line endings.
std::string to_csv(const Table& table);
nlohmann::json to_json(const Table& table);
std::string format_number(double x);

// Full identity suite, sorted by check name. Tolerance override applied when set.
VerificationReport cmd_verify(const RunConfig& config);
// Columns: t, overlap, total_N_A, N_A[<kappa>]...
Table cmd_evolve(const RunConfig& config);
// Columns: t, z_numeric, z_analytic, envelope
Table cmd_classical(const RunConfig& config);
// Columns: zeta, bogoliubov_residual, dilation_residual, vacuum_overlap, amp_2n[0..8]
Table cmd_squeeze(const RunConfig& config);

// Entry point used by the executable. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdamp::cli
