#pragma once

#include <optional>
#include <vector>

#include "wellcascade/potential.hpp"
#include "wellcascade/quantities.hpp"
#include "wellcascade/transcendental.hpp"

namespace wellcascade {

struct Level {
  double energy;  // eV, pair-local (deep-well bottom = 0)
  Regime regime;
  double residual;  // |secular(energy)|
  double bracket_lo;
  double bracket_hi;
  int index;
};

struct SolverConfig {
  double grid_step = 2e-5;      // eV
  double refine_tol = 1e-9;     // eV, upper bound on the final bracket width
  double residual_tol = 1e-8;   // on the normalised secular function
  std::optional<int> max_levels;

  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

/// Restricts a solve to part of (0, v_deep). Defaults to the whole range.
struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;  // 0 means v_deep
};

struct SolveDiagnostics {
  long grid_points = 0;
  int sign_changes = 0;
  // Bound states expected in the window from the zero count of the shooting
  // solution; every one of them is reported unless listed as rejected.
  int expected_count = 0;
  // Roots that shared a grid cell with another root and were separated by
  // splitting the cell on the zero count.
  std::vector<double> recovered;
  // Sign changes whose refined point failed the residual check.
  std::vector<double> rejected;
};

struct SolveResult {
  std::vector<Level> levels;
  SolveDiagnostics diagnostics;
};

/// All bound states of the pair inside the window, ascending.
///
/// The secular function is sampled on a uniform grid and every sign change
/// is refined by bisection. The number of roots found is then checked against
/// the oscillation-theorem count; cells hiding two or more close roots are
/// subdivided until each root has its own bracket.
SolveResult find_levels(const WellPair& pair, const SolverConfig& cfg = {},
                        const EnergyWindow& window = {},
                        const PhysicalConstants& c = codata2018());

int count_levels(const WellPair& pair, const SolverConfig& cfg = {},
                 const PhysicalConstants& c = codata2018());

struct Interval {
  double lo;
  double hi;

  bool operator==(const Interval&) const = default;
};

struct CalibrationOptions {
  double grid_step = 0.0;        // 0 selects the default for the search variable
  double misfit_threshold = 0.005;  // eV, RMS
  SolverConfig solver{};
};

struct CalibrationResult {
  double value;     // A for distance, eV for depth
  double misfit;    // RMS deviation of matched levels from targets, eV
  std::vector<double> matched_levels;  // in the targets' reference frame
  int evaluations = 0;
};

/// RMS distance between sorted targets and the best block of consecutive
/// levels. Returns +inf when there are fewer levels than targets.
double match_targets(const std::vector<double>& levels, std::vector<double> targets,
                     std::vector<double>* matched = nullptr);

/// Chooses L in `range` so the pair's levels hit the (pair-local) targets.
/// Deterministic grid search (0.01 A default) followed by golden-section
/// refinement around the best grid point.
CalibrationResult calibrate_distance(const WellPair& pair_template,
                                     const std::vector<double>& targets, Interval range,
                                     const CalibrationOptions& opts = {},
                                     const PhysicalConstants& c = codata2018());

enum class DepthRole { Shallow, Deep };

/// Searches the depth that is *not* `fixed_role` over `range` (0.0005 eV
/// grid by default). Targets are given in a frame whose barrier top sits at
/// `barrier_top`; by default that is the pair-local frame of the template.
/// A cascade frame is obtained with barrier_top = the global maximum depth.
CalibrationResult calibrate_depth(const WellPair& pair_template, DepthRole fixed_role,
                                  const std::vector<double>& targets, Interval range,
                                  std::optional<double> barrier_top = std::nullopt,
                                  const CalibrationOptions& opts = {},
                                  const PhysicalConstants& c = codata2018());

}  // namespace wellcascade
