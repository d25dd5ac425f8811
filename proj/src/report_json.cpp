#include "wellcascade/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace wellcascade {

using nlohmann::json;

double round_sig9(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::stod(buf);
}

json to_json(const WellPair& pair) {
  return {{"width_A", pair.width},
          {"distance_A", round_sig9(pair.distance)},
          {"v_shallow_eV", pair.v_shallow},
          {"v_deep_eV", pair.v_deep}};
}

json to_json(const SolverConfig& cfg) {
  json j = {{"grid_step_eV", cfg.grid_step},
            {"refine_tol_eV", cfg.refine_tol},
            {"residual_tol", cfg.residual_tol}};
  j["max_levels"] = cfg.max_levels ? json(*cfg.max_levels) : json(nullptr);
  return j;
}

json to_json(const Level& level) {
  return {{"index", level.index},
          {"energy_eV", round_sig9(level.energy)},
          {"regime", std::string(to_string(level.regime))},
          {"residual", round_sig9(level.residual)}};
}

json time_json(double seconds) {
  return {{"s", round_sig9(seconds)}, {"ps", round_sig9(seconds / kPicosecond)}};
}

namespace {

json rounded(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(round_sig9(x));
  return out;
}

json diagnostics_json(const SolveDiagnostics& d) {
  return {{"grid_points", d.grid_points},
          {"sign_changes", d.sign_changes},
          {"expected_count", d.expected_count},
          {"recovered_eV", rounded(d.recovered)},
          {"rejected_eV", rounded(d.rejected)}};
}

json resonance_json(const ResonantPair& r) {
  return {{"e_plus_eV", round_sig9(r.e_plus)},
          {"e_minus_eV", round_sig9(r.e_minus)},
          {"splitting_eV", round_sig9(r.splitting())}};
}

json comparison_json(const Comparison& c) {
  json rows = json::array();
  for (const ComparisonRow& r : c.rows) {
    rows.push_back({{"step", r.step},
                    {"model_from_eV", round_sig9(r.model_from)},
                    {"model_to_eV", round_sig9(r.model_to)},
                    {"model_time", time_json(r.model_time)},
                    {"reference_from_eV", round_sig9(r.reference_from)},
                    {"reference_to_eV", round_sig9(r.reference_to)},
                    {"reference_time", time_json(r.reference_time)},
                    {"from_deviation_eV", round_sig9(r.from_deviation)},
                    {"to_deviation_eV", round_sig9(r.to_deviation)},
                    {"time_ratio", round_sig9(r.time_ratio)},
                    {"same_order", r.same_order}});
  }
  return {{"reference", c.reference}, {"rows", rows}};
}

}  // namespace

json levels_document(const std::string& pair_name, const WellPair& pair, double shift,
                     const SolverConfig& cfg, const SolveResult& result) {
  json levels = json::array();
  for (const Level& l : result.levels) {
    json j = to_json(l);
    j["global_energy_eV"] = round_sig9(l.energy + shift);
    levels.push_back(j);
  }
  json p = to_json(pair);
  p["name"] = pair_name;
  p["global_shift_eV"] = round_sig9(shift);
  return {{"schema_version", kSchemaVersion},
          {"pair", p},
          {"config", to_json(cfg)},
          {"levels", levels},
          {"diagnostics", diagnostics_json(result.diagnostics)}};
}

json report_document(const CascadeReport& report) {
  json spec = {{"labels", report.spec.labels},
               {"widths_A", report.spec.widths},
               {"depths_eV", report.spec.depths},
               {"distances_A", rounded(report.spec.distances)}};

  json pairs = json::array();
  for (const PairSolution& p : report.pairs) {
    json levels = json::array();
    for (const Level& l : p.levels) {
      json j = to_json(l);
      j["global_energy_eV"] = round_sig9(l.energy + p.shift);
      levels.push_back(j);
    }
    json pj = to_json(p.pair);
    pj["name"] = p.name;
    pj["active"] = p.active;
    pj["global_shift_eV"] = round_sig9(p.shift);
    pj["levels"] = levels;
    pairs.push_back(pj);
  }

  json wells = json::array();
  for (const WellSummary& w : report.wells) {
    wells.push_back({{"label", w.label},
                     {"depth_eV", w.depth},
                     {"floor_eV", round_sig9(w.floor)},
                     {"ground_eV", round_sig9(w.ground)},
                     {"resonant_levels_eV", rounded(w.resonant_levels)}});
  }

  json steps = json::array();
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    const TransferStep& s = report.steps[k];
    json j = {{"step", k + 1},
              {"from", s.from_site},
              {"to", s.to_site},
              {"incoming_eV", round_sig9(s.incoming_energy)},
              {"resonance", resonance_json(s.resonance)},
              {"tunneling_time", time_json(s.tunneling_time)},
              {"decay_from_eV", round_sig9(s.decay_from)},
              {"decay_to_eV", round_sig9(s.decay_to)},
              {"decay_gap_eV", round_sig9(s.decay_gap)},
              {"decay_time", time_json(s.decay_time)},
              {"tunneling_to_decay_ratio", round_sig9(s.tunneling_to_decay_ratio())}};
    const auto& fd = report.oracle_splittings[k];
    j["oracle_splitting"] = fd ? json{{"splitting_eV", round_sig9(fd->value)},
                                      {"error_estimate_eV", round_sig9(fd->error_estimate)}}
                               : json(nullptr);
    steps.push_back(j);
  }

  json comparisons = json::array();
  for (const Comparison& c : report.comparisons) comparisons.push_back(comparison_json(c));

  return {{"schema_version", kSchemaVersion},
          {"spec", spec},
          {"solver", to_json(report.solver)},
          {"resonance_window_eV", report.options.resonance_window},
          {"excitation_wavelength_nm", report.options.excitation_wavelength_nm},
          {"pairs", pairs},
          {"wells", wells},
          {"absorption",
           {{"ground_eV", round_sig9(report.absorption.ground)},
            {"excited_eV", round_sig9(report.absorption.excited)},
            {"delta_E_eV", round_sig9(report.absorption.delta_E)},
            {"wavelength_nm", round_sig9(report.absorption.wavelength)}}},
          {"steps", steps},
          {"tunneling_vs_decay", rounded(tunneling_vs_decay(report))},
          {"comparisons", comparisons},
          {"notes", report.notes}};
}

}  // namespace wellcascade
