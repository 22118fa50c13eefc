#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetlab/pipeline.hpp"

namespace tetlab::cli {

/// Bad command line or config file. Maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written. Maps to exit status 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

struct RunConfig {
  std::string command;  ///< free-particle, free-fall, double-slit or figure
  std::string figure_id;
  /// Explicit settings only (config file, then flags). Presets fill the rest.
  ParameterSet parameters;
  std::filesystem::path output_dir = "out";
  std::set<std::string> formats = {"csv", "json", "svg"};
  bool help = false;
  std::string help_text;

  ExperimentKind kind() const;
  /// Output file stem: the figure id, or the command name.
  std::string name() const;
};

/// Strict number parse: the whole string must be a finite double.
std::optional<double> parse_number(const std::string& text);

/// Reads key=value lines; '#' starts a comment, blank lines are skipped.
ParameterSet read_config_file(const std::filesystem::path& path);

/// Throws UsageError for unknown flags or keys, malformed numbers, unknown
/// figure ids and missing --id. `--help` sets `help` and fills help_text.
RunConfig parse_args(int argc, const char* const* argv);
RunConfig parse_args(const std::vector<std::string>& args);

}  // namespace tetlab::cli
