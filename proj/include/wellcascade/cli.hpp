#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wellcascade/config.hpp"

namespace wellcascade::cli {

enum ExitCode : int { kOk = 0, kComputationError = 1, kConfigError = 2 };

/// Options of every subcommand; each subcommand reads the fields it owns.
struct Command {
  std::string name;
  int pair = 1;  // 1-based; 4 is the closing pair

  // scan-pair
  double emin = 0.0, emax = 0.0, step = 1e-4;

  // oracle
  std::optional<int> n_levels;
  bool extrapolate = false;
  bool eigenvectors = false;

  // times
  std::optional<double> e_plus, e_minus, decay_to, near;
  std::optional<std::string> levels_json;
  int k = 0;

  // cascade
  bool emit_profile = false;
  bool emit_scan = false;

  // calibrate
  std::string mode = "distance";
  std::vector<double> targets;
  std::optional<double> range_min, range_max;
  std::string frame = "global";
  std::optional<std::string> write_config;

  // wavefunction
  int level = 0;
  int points = 2001;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> kNames = {"solve-pair", "scan-pair",   "oracle",
                                                  "times",      "cascade",     "calibrate",
                                                  "wavefunction"};
  return kNames;
}

/// Runs one subcommand against an already validated configuration.
int dispatch(const Command& command, const RunConfig& config, std::ostream& out,
             std::ostream& err);

/// Full command line: parses arguments, loads --config (the built-in model
/// parameters when absent), applies the output-directory overrides and
/// dispatches. Errors are reported on `err` as one JSON object per line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wellcascade::cli
