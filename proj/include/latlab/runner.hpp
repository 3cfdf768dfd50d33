#pragma once

// Experiment runner behind the latlab command line: one subcommand per
// experiment, parameters as key/value strings, reports as ordered JSON.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace latlab::cli {

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::string out;  // empty: standard output
  std::string format = "json";
  /// Adds wall-clock time to the report; off by default so reports are byte-stable.
  bool timing = false;
};

const std::vector<std::string>& subcommands();
/// Theorem or example a subcommand exercises.
std::string anchor(const std::string& command);

/// Lines "key = value"; '#' starts a comment. Values override `base`;
/// the keys "out", "format" and "timing" set the output options.
RunConfig apply_config_file(const std::string& path, RunConfig base);

/// Throws PreconditionError for an unknown subcommand or parameter.
nlohmann::ordered_json run(const RunConfig& config);

/// JSON text, or CSV built from the report's table when one exists.
std::string render(const nlohmann::ordered_json& report, const std::string& format);

/// Exit code of a failed run: 2 for precondition violations, 3 for borderline outcomes.
int exit_code(const std::string& kind);

/// Report for a failed run.
nlohmann::ordered_json error_report(const RunConfig& config, const std::string& kind, const std::string& message,
                                    const std::vector<std::string>& candidates = {});

}  // namespace latlab::cli
