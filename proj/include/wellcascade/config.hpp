#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wellcascade/cascade.hpp"
#include "wellcascade/eigensolver.hpp"
#include "wellcascade/oracle.hpp"
#include "wellcascade/potential.hpp"
#include "wellcascade/quantities.hpp"

namespace wellcascade {

// Run configuration in a flat INI dialect:
//
//   [wells]        labels, width | widths, depths, distances   (required)
//   [solver]       grid_step, refine_tol, residual_tol, max_levels
//   [oracle]       grid_points, padding, extrapolate, cross_check
//   [cascade]      resonance_window, excitation_wavelength_nm
//   [calibration]  targets_1, targets_2, targets_3, distance_min, distance_max,
//                  misfit_threshold
//   [constants]    hbar_J_s, electron_mass_kg, eV_in_J, hc_eV_nm
//   [output]       dir, formats
//
// Lists are comma separated. Unknown sections or keys are errors.

struct CalibrationSettings {
  // Per active pair, in the global frame (barrier top = deepest well depth).
  std::array<std::vector<double>, 3> targets{};
  Interval distance_range{60.0, 65.0};
  double misfit_threshold = 0.005;

  bool operator==(const CalibrationSettings&) const = default;
};

struct ConstantOverrides {
  std::optional<double> hbar_J_s;
  std::optional<double> electron_mass_kg;
  std::optional<double> eV_in_J;
  std::optional<double> hc_eV_nm;

  bool empty() const { return !hbar_J_s && !electron_mass_kg && !eV_in_J && !hc_eV_nm; }
  bool operator==(const ConstantOverrides&) const = default;
};

struct OutputSettings {
  std::string dir = ".";
  std::vector<std::string> formats{"json", "csv", "table"};

  bool wants(const std::string& format) const;
  bool operator==(const OutputSettings&) const = default;
};

struct RunConfig {
  CascadeSpec spec;
  SolverConfig solver;
  FdConfig oracle;
  bool oracle_cross_check = true;
  CascadeOptions cascade;  // its `oracle` member is derived from the two fields above
  CalibrationSettings calibration;
  ConstantOverrides constants;
  OutputSettings output;

  PhysicalConstants physical_constants() const;
  CascadeOptions cascade_options() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates. Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Text form that parse_config reads back to an equal RunConfig.
std::string serialize_config(const RunConfig& cfg);

/// Parameters of the four-well model with calibrated inter-well distances;
/// the same content as configs/paper.cfg.
RunConfig builtin_config();

/// Environment variable that overrides [output] dir.
inline constexpr const char* kOutputDirEnv = "WELLCASCADE_OUTPUT_DIR";

}  // namespace wellcascade
