#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wellcascade/dynamics.hpp"
#include "wellcascade/eigensolver.hpp"
#include "wellcascade/oracle.hpp"
#include "wellcascade/potential.hpp"

namespace wellcascade {

struct CascadeOptions {
  double resonance_window = 0.05;  // eV around the incoming energy
  // Sets the nominal post-absorption energy: ground state + hc / lambda.
  double excitation_wavelength_nm = 870.0;
  // Cross-check each doublet splitting with the finite-difference solver.
  std::optional<FdConfig> oracle = FdConfig{};

  void validate() const;
  bool operator==(const CascadeOptions&) const = default;
};

struct PairSolution {
  int first_well;
  int second_well;
  std::string name;  // e.g. "P-B"
  WellPair pair;
  double shift;  // global = local + shift
  std::vector<Level> levels;  // pair-local
  bool active;  // false for the closing pair, which carries no transfer step

  std::vector<double> global_levels() const;
};

struct WellSummary {
  std::string label;
  double depth;
  double floor;
  double ground;  // global eV
  std::vector<double> resonant_levels;  // doublet members involving this well
};

struct Absorption {
  double ground;      // eV
  double excited;     // eV, lower member of the first doublet
  double delta_E;     // eV
  double wavelength;  // nm
};

struct ReferenceStep {
  double from;  // eV
  double to;    // eV
  double time;  // s
};

struct ReferenceSchedule {
  std::string name;
  std::vector<ReferenceStep> steps;
};

struct ComparisonRow {
  int step;
  double model_from, model_to, model_time;
  double reference_from, reference_to, reference_time;
  double from_deviation, to_deviation;  // model - reference, eV
  double time_ratio;                    // model / reference
  bool same_order;                      // within a factor of ten
};

struct Comparison {
  std::string reference;
  std::vector<ComparisonRow> rows;
};

struct CascadeReport {
  CascadeSpec spec;
  SolverConfig solver;
  CascadeOptions options;
  std::vector<PairSolution> pairs;  // three active pairs, then the closing pair if configured
  std::vector<WellSummary> wells;
  Absorption absorption;
  std::vector<TransferStep> steps;
  std::vector<std::optional<FdSplitting>> oracle_splittings;  // per step
  std::vector<Comparison> comparisons;  // published model values, then experiment
  std::vector<std::string> notes;
};

/// Solves the three active pairs, references them globally and builds the
/// absorption + tunnel/decay schedule. Throws ResonanceNotFound when a pair
/// has no doublet near the incoming energy.
CascadeReport solve_cascade(const CascadeSpec& spec, const SolverConfig& cfg = {},
                            const CascadeOptions& options = {},
                            const PhysicalConstants& c = codata2018());

/// Nearest level to `incoming` plus its closer neighbour, both within
/// `window`. Levels must be ascending.
ResonantPair select_doublet(const std::vector<double>& levels, double incoming, double window,
                            const std::string& pair_name);

/// Reaction-centre measurements: 1.40 -> 1.30 eV in 3 ps, 1.30 -> 1.15 eV in
/// 1 ps, 1.15 -> 0.65 eV in 200 ps.
ReferenceSchedule experiment_reference();

/// Energies and times reported for the four-well model itself.
ReferenceSchedule published_model_reference();

/// The report's own schedule as a reference (comparing a report with itself
/// gives zero deviations).
ReferenceSchedule reference_from_report(const CascadeReport& report);

Comparison compare(const CascadeReport& report, const ReferenceSchedule& reference);
Comparison compare_to_experiment(const CascadeReport& report);

/// Tunneling time over decay time for each step.
std::vector<double> tunneling_vs_decay(const CascadeReport& report);

}  // namespace wellcascade
