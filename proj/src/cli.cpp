#include "wellcascade/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wellcascade/cascade.hpp"
#include "wellcascade/errors.hpp"
#include "wellcascade/report_json.hpp"
#include "wellcascade/wavefunctions.hpp"

namespace wellcascade::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SelectedPair {
  int number;  // 1-based
  std::string name;
  WellPair pair;
  double shift;
  int first_well;
  int second_well;
};

SelectedPair select_pair(const RunConfig& cfg, int number) {
  const int count = static_cast<int>(cfg.spec.distances.size());
  if (number < 1 || number > count) {
    throw ConfigError("--pair", fmt::format("pair must be between 1 and {}", count));
  }
  const int i = number - 1;
  const int j = number % CascadeSpec::kWells;
  return {number,
          cfg.spec.labels[static_cast<std::size_t>(i)] + "-" +
              cfg.spec.labels[static_cast<std::size_t>(j)],
          cfg.spec.active_pair(i),
          cfg.spec.pair_shift(i, j),
          i,
          j};
}

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output.dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ComputationError("cannot write " + path.string());
  f << text;
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

void print_levels(std::ostream& out, const SelectedPair& p, const SolveResult& r) {
  fmt::print(out, "pair {} ({}): a = {} A, L = {} A, depths {} / {} eV, shift {} eV\n", p.number,
             p.name, p.pair.width, p.pair.distance, p.pair.v_shallow, p.pair.v_deep, p.shift);
  fmt::print(out, "{:>5}  {:>13}  {:>13}  {:>6}  {:>10}\n", "index", "E_local_eV", "E_global_eV",
             "regime", "residual");
  for (const Level& l : r.levels) {
    fmt::print(out, "{:>5}  {:>13.9f}  {:>13.9f}  {:>6}  {:>10.2e}\n", l.index, l.energy,
               l.energy + p.shift, to_string(l.regime), l.residual);
  }
  fmt::print(out, "{} levels (expected {}, {} recovered by count refinement)\n", r.levels.size(),
             r.diagnostics.expected_count, r.diagnostics.recovered.size());
}

int cmd_solve_pair(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const SelectedPair p = select_pair(cfg, c.pair);
  const PhysicalConstants k = cfg.physical_constants();
  const SolveResult r = find_levels(p.pair, cfg.solver, {}, k);
  if (cfg.output.wants("table")) print_levels(out, p, r);
  if (cfg.output.wants("json")) {
    const fs::path path = output_dir(cfg) / fmt::format("levels_pair{}.json", p.number);
    write_json(path, levels_document(p.name, p.pair, p.shift, cfg.solver, r));
    fmt::print(out, "wrote {}\n", path.string());
  }
  return kOk;
}

struct ScanSummary {
  std::vector<std::pair<double, double>> roots;
  std::vector<std::pair<double, double>> poles;
};

// Classifies each sign change of the mismatch column: a root when the
// pole-free secular function changes sign over the same interval.
ScanSummary summarize_scan(const WellPair& pair, double shift, const std::vector<ScanRow>& rows,
                           const PhysicalConstants& k) {
  ScanSummary s;
  const ScanRow* prev = nullptr;
  for (const ScanRow& r : rows) {
    if (r.pole) continue;
    if (prev && std::signbit(prev->mismatch) != std::signbit(r.mismatch)) {
      const bool root = std::signbit(secular(pair, prev->energy_eV - shift, k)) !=
                        std::signbit(secular(pair, r.energy_eV - shift, k));
      (root ? s.roots : s.poles).emplace_back(prev->energy_eV, r.energy_eV);
    }
    prev = &r;
  }
  return s;
}

void write_scan(const fs::path& path, const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  write_scan_csv(os, rows);
  write_text(path, os.str());
}

int cmd_scan_pair(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const SelectedPair p = select_pair(cfg, c.pair);
  const PhysicalConstants k = cfg.physical_constants();
  double emin = c.emin;
  double emax = c.emax;
  if (emin == 0.0 && emax == 0.0) {
    emin = p.shift;
    emax = p.shift + p.pair.v_deep;
  }
  if (!(c.step > 0.0) || !(emax > emin)) {
    throw ConfigError("--emin/--emax/--step", "need emin < emax and a positive step");
  }
  const std::vector<ScanRow> rows = scan(p.pair, emin, emax, c.step, p.shift, k);
  const fs::path path = output_dir(cfg) / fmt::format("scan_pair{}.csv", p.number);
  write_scan(path, rows);
  const ScanSummary s = summarize_scan(p.pair, p.shift, rows, k);
  fmt::print(out, "pair {} ({}): {} rows in [{}, {}] eV, wrote {}\n", p.number, p.name,
             rows.size(), emin, emax, path.string());
  for (const auto& [lo, hi] : s.roots) fmt::print(out, "  root bracket [{:.6f}, {:.6f}] eV\n", lo, hi);
  for (const auto& [lo, hi] : s.poles) fmt::print(out, "  pole crossing [{:.6f}, {:.6f}] eV\n", lo, hi);
  return kOk;
}

int cmd_oracle(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const PhysicalConstants k = cfg.physical_constants();
  FdConfig fd = cfg.oracle;
  fd.extrapolate = fd.extrapolate || c.extrapolate;
  std::vector<int> numbers;
  if (c.pair == 0) {
    for (int n = 1; n <= CascadeSpec::kActivePairs; ++n) numbers.push_back(n);
  } else {
    numbers.push_back(c.pair);
  }
  bool agree = true;
  for (int number : numbers) {
    const SelectedPair p = select_pair(cfg, number);
    const SolveResult r = find_levels(p.pair, cfg.solver, {}, k);
    const int n = c.n_levels ? std::min(*c.n_levels, static_cast<int>(r.levels.size()))
                             : static_cast<int>(r.levels.size());
    const PotentialProfile profile = pair_profile(p.pair);
    const FdLevels f = fd_levels(profile, std::max(n, 1), fd, k);
    const int total_fd = static_cast<int>(fd_levels(profile, 1000, fd, k).levels.size());
    fmt::print(out, "pair {} ({}), grid_points {}{}\n", p.number, p.name, fd.grid_points,
               fd.extrapolate ? ", Richardson" : "");
    fmt::print(out, "{:>5}  {:>13}  {:>13}  {:>10}\n", "index", "matching_eV", "fd_eV", "diff_eV");
    for (int i = 0; i < n && i < static_cast<int>(f.levels.size()); ++i) {
      const double e = r.levels[static_cast<std::size_t>(i)].energy;
      const double d = f.levels[static_cast<std::size_t>(i)] - e;
      agree = agree && std::abs(d) <= 5e-3;
      fmt::print(out, "{:>5}  {:>13.9f}  {:>13.9f}  {:>10.2e}\n", i, e + p.shift,
                 f.levels[static_cast<std::size_t>(i)] + p.shift, d);
      if (c.eigenvectors) {
        const FdEigenvector v = fd_eigenvector(profile, i, fd, k);
        std::ostringstream os;
        os << "x_A,psi\n";
        os.precision(12);
        for (std::size_t m = 0; m < v.x.size(); ++m) os << v.x[m] << ',' << v.psi[m] << '\n';
        write_text(output_dir(cfg) / fmt::format("oracle_pair{}_{}.csv", p.number, i), os.str());
      }
    }
    const bool counts = total_fd == static_cast<int>(r.levels.size());
    agree = agree && counts;
    fmt::print(out, "bound states: matching {} / finite difference {}\n", r.levels.size(),
               total_fd);
  }
  fmt::print(out, "{}\n", agree ? "oracle agrees within 5e-3 eV" : "oracle DISAGREES");
  return agree ? kOk : kComputationError;
}

std::vector<double> levels_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--levels-json", "cannot read " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("--levels-json", e.what());
  }
  if (!doc.contains("levels") || !doc["levels"].is_array()) {
    throw ConfigError("--levels-json", "document has no 'levels' array");
  }
  std::vector<double> out;
  for (const json& l : doc["levels"]) {
    out.push_back(l.contains("global_energy_eV") ? l["global_energy_eV"].get<double>()
                                                 : l.at("energy_eV").get<double>());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_times(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const PhysicalConstants k = cfg.physical_constants();
  ResonantPair pair{};
  if (c.e_plus && c.e_minus) {
    pair = make_resonant_pair(*c.e_plus, *c.e_minus);
  } else if (c.levels_json && c.near) {
    pair = select_doublet(levels_from_json(*c.levels_json), *c.near,
                          cfg.cascade.resonance_window, *c.levels_json);
  } else {
    throw ConfigError("times", "give --eplus and --eminus, or --levels-json with --near");
  }
  const double t = tunneling_time(pair, c.k, k);
  fmt::print(out, "E+ = {:.9f} eV, E- = {:.9f} eV, splitting = {:.6e} eV\n", pair.e_plus,
             pair.e_minus, pair.splitting());
  fmt::print(out, "tunneling time (k = {}): {:.6e} s = {:.6f} ps\n", c.k, t, t / kPicosecond);
  if (c.decay_to) {
    const double gap = pair.e_plus - *c.decay_to;
    const double dt = decay_time(gap, k);
    fmt::print(out, "decay {:.9f} -> {:.9f} eV: gap {:.6f} eV, time {:.6e} s = {:.4f} fs\n",
               pair.e_plus, *c.decay_to, gap, dt, dt / kFemtosecond);
    fmt::print(out, "tunneling / decay = {:.1f}\n", tunneling_time(pair, 0, k) / dt);
  }
  return kOk;
}

void print_report(std::ostream& out, const CascadeReport& r) {
  fmt::print(out, "wells:\n");
  for (const WellSummary& w : r.wells) {
    fmt::print(out, "  {:<3} depth {:.4f} eV  floor {:.4f} eV  ground {:.6f} eV\n", w.label,
               w.depth, w.floor, w.ground);
  }
  fmt::print(out, "absorption: {:.6f} -> {:.6f} eV, dE = {:.6f} eV, lambda = {:.2f} nm\n",
             r.absorption.ground, r.absorption.excited, r.absorption.delta_E,
             r.absorption.wavelength);
  fmt::print(out, "{:>4}  {:<6}  {:>12}  {:>12}  {:>11}  {:>12}  {:>10}  {:>9}\n", "step", "sites",
             "E-_eV", "E+_eV", "T_ps", "decay_to_eV", "dt_fs", "T/dt");
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const TransferStep& s = r.steps[i];
    fmt::print(out, "{:>4}  {:<6}  {:>12.7f}  {:>12.7f}  {:>11.5f}  {:>12.7f}  {:>10.4f}  {:>9.1f}\n",
               i + 1, s.from_site + ">" + s.to_site, s.resonance.e_minus, s.resonance.e_plus,
               s.tunneling_time / kPicosecond, s.decay_to, s.decay_time / kFemtosecond,
               s.tunneling_to_decay_ratio());
  }
  for (const Comparison& c : r.comparisons) {
    fmt::print(out, "comparison with {}:\n", c.reference);
    for (const ComparisonRow& row : c.rows) {
      fmt::print(out,
                 "  step {}: {:.4f}->{:.4f} eV vs {:.4f}->{:.4f} eV; T {:.4g} ps vs {:.4g} ps "
                 "(ratio {:.3g}{})\n",
                 row.step, row.model_from, row.model_to, row.reference_from, row.reference_to,
                 row.model_time / kPicosecond, row.reference_time / kPicosecond, row.time_ratio,
                 row.same_order ? ", same order" : "");
    }
  }
  for (const std::string& n : r.notes) fmt::print(out, "note: {}\n", n);
}

int cmd_cascade(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const PhysicalConstants k = cfg.physical_constants();
  const CascadeReport report = solve_cascade(cfg.spec, cfg.solver, cfg.cascade_options(), k);
  if (cfg.output.wants("table")) print_report(out, report);
  if (cfg.output.wants("json")) {
    const fs::path path = output_dir(cfg) / "report.json";
    write_json(path, report_document(report));
    fmt::print(out, "wrote {}\n", path.string());
  }
  if (c.emit_profile) {
    std::ostringstream os;
    write_profile_csv(os, cascade_profile(cfg.spec));
    write_text(output_dir(cfg) / "profile.csv", os.str());
  }
  if (c.emit_scan) {
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
      const PairSolution& p = report.pairs[i];
      const ResonantPair& d = report.steps[i].resonance;
      const std::vector<ScanRow> rows =
          scan(p.pair, d.e_minus - 0.05, d.e_plus + 0.05, 1e-5, p.shift, k);
      write_scan(output_dir(cfg) / fmt::format("scan_pair{}.csv", i + 1), rows);
    }
  }
  return kOk;
}

int cmd_calibrate(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const SelectedPair p = select_pair(cfg, c.pair);
  const PhysicalConstants k = cfg.physical_constants();
  std::vector<double> targets = c.targets;
  if (targets.empty() && p.number <= CascadeSpec::kActivePairs) {
    targets = cfg.calibration.targets[static_cast<std::size_t>(p.number - 1)];
  }
  if (targets.empty()) throw ConfigError("--targets", "no calibration targets for this pair");
  if (c.frame != "global" && c.frame != "local") {
    throw ConfigError("--frame", "expected global or local");
  }
  const bool global = c.frame == "global";
  CalibrationOptions opts;
  opts.solver = cfg.solver;
  opts.misfit_threshold = cfg.calibration.misfit_threshold;
  RunConfig updated = cfg;

  if (c.mode == "distance") {
    const Interval range{c.range_min.value_or(cfg.calibration.distance_range.lo),
                         c.range_max.value_or(cfg.calibration.distance_range.hi)};
    std::vector<double> local = targets;
    if (global) {
      for (double& t : local) t -= p.shift;
    }
    const CalibrationResult r = calibrate_distance(p.pair, local, range, opts, k);
    const double back = global ? p.shift : 0.0;
    fmt::print(out, "pair {} ({}): L = {:.4f} A, misfit {:.3e} eV, {} evaluations\n", p.number,
               p.name, r.value, r.misfit, r.evaluations);
    for (std::size_t i = 0; i < r.matched_levels.size(); ++i) {
      fmt::print(out, "  target {:.6f} eV -> level {:.6f} eV\n", targets[i],
                 r.matched_levels[i] + back);
    }
    updated.spec.distances[static_cast<std::size_t>(p.number - 1)] = r.value;
  } else if (c.mode == "depth") {
    // The second well of the pair is searched; the first is held fixed.
    const double current = cfg.spec.depths[static_cast<std::size_t>(p.second_well)];
    const double fixed = cfg.spec.depths[static_cast<std::size_t>(p.first_well)];
    const Interval range{c.range_min.value_or(current - 0.05), c.range_max.value_or(current + 0.05)};
    const DepthRole fixed_role = fixed < current ? DepthRole::Shallow : DepthRole::Deep;
    std::optional<double> top;
    if (global) top = cfg.spec.max_depth();
    const CalibrationResult r = calibrate_depth(p.pair, fixed_role, targets, range, top, opts, k);
    fmt::print(out, "pair {} ({}): depth of {} = {:.5f} eV, misfit {:.3e} eV, {} evaluations\n",
               p.number, p.name, cfg.spec.labels[static_cast<std::size_t>(p.second_well)], r.value,
               r.misfit, r.evaluations);
    for (std::size_t i = 0; i < r.matched_levels.size(); ++i) {
      fmt::print(out, "  target {:.6f} eV -> level {:.6f} eV\n", targets[i], r.matched_levels[i]);
    }
    updated.spec.depths[static_cast<std::size_t>(p.second_well)] = r.value;
  } else {
    throw ConfigError("--mode", "expected distance or depth");
  }
  if (c.write_config) {
    write_text(*c.write_config, serialize_config(updated));
    fmt::print(out, "wrote {}\n", *c.write_config);
  }
  return kOk;
}

int cmd_wavefunction(const Command& c, const RunConfig& cfg, std::ostream& out) {
  const SelectedPair p = select_pair(cfg, c.pair);
  const PhysicalConstants k = cfg.physical_constants();
  const SolveResult r = find_levels(p.pair, cfg.solver, {}, k);
  if (c.level < 0 || c.level >= static_cast<int>(r.levels.size())) {
    throw ConfigError("--level", fmt::format("pair {} has {} levels", p.number, r.levels.size()));
  }
  const Level& level = r.levels[static_cast<std::size_t>(c.level)];
  const PiecewiseWavefunction wf = build_wavefunction(p.pair, level, 1e-6, k);
  const auto samples = sample_wavefunction(wf, c.points);
  const fs::path path = output_dir(cfg) / fmt::format("wavefunction_{}_{}.csv", p.number, c.level);
  std::ostringstream os;
  write_wavefunction_csv(os, samples);
  write_text(path, os.str());
  fmt::print(out,
             "pair {} level {}: E = {:.9f} eV (global {:.9f}), regime {}, nodes {}, "
             "matching residual {:.2e}, wall residual {:.2e}\n",
             p.number, c.level, level.energy, level.energy + p.shift, to_string(wf.regime),
             wf.node_count(), wf.matching_residual(), wf.wall_residual);
  fmt::print(out, "wrote {}\n", path.string());
  return kOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  const std::string& field = {}) {
  json j = {{"error", kind}, {"message", message}};
  if (!field.empty()) j["field"] = field;
  err << j.dump() << '\n';
}

}  // namespace

int dispatch(const Command& command, const RunConfig& config, std::ostream& out,
             std::ostream& err) {
  try {
    if (command.name == "solve-pair") return cmd_solve_pair(command, config, out);
    if (command.name == "scan-pair") return cmd_scan_pair(command, config, out);
    if (command.name == "oracle") return cmd_oracle(command, config, out);
    if (command.name == "times") return cmd_times(command, config, out);
    if (command.name == "cascade") return cmd_cascade(command, config, out);
    if (command.name == "calibrate") return cmd_calibrate(command, config, out);
    if (command.name == "wavefunction") return cmd_wavefunction(command, config, out);
    report_error(err, "usage", "unknown subcommand '" + command.name + "'");
    return kConfigError;
  } catch (const ConfigError& e) {
    report_error(err, "config", e.what(), e.field());
    return kConfigError;
  } catch (const DomainError& e) {
    report_error(err, "input", e.what());
    return kConfigError;
  } catch (const ResonanceNotFound& e) {
    report_error(err, "resonance_not_found", e.what(), e.pair_name());
    return kComputationError;
  } catch (const CalibrationError& e) {
    report_error(err, "calibration_failed", e.what());
    return kComputationError;
  } catch (const std::exception& e) {
    report_error(err, "computation", e.what());
    return kComputationError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states, resonances and transfer times of coupled square wells",
               "wellcascade"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  app.add_option("--config", config_path, "Configuration file (built-in model parameters if omitted)");
  app.add_option("--out", out_dir, "Output directory (overrides config and environment)");

  Command cmd;
  int oracle_pair = 0;
  auto pair_option = [&](CLI::App* sub, int* target) {
    sub->add_option("--pair", *target, "Pair number: 1..3 active, 4 closing")
        ->check(CLI::Range(0, 4));
  };

  CLI::App* solve = app.add_subcommand("solve-pair", "List the bound states of one pair");
  pair_option(solve, &cmd.pair);

  CLI::App* scan_cmd = app.add_subcommand("scan-pair", "Tabulate the matching functions to CSV");
  pair_option(scan_cmd, &cmd.pair);
  scan_cmd->add_option("--emin", cmd.emin, "Lower energy, eV (global)");
  scan_cmd->add_option("--emax", cmd.emax, "Upper energy, eV (global)");
  scan_cmd->add_option("--step", cmd.step, "Energy step, eV");

  CLI::App* oracle = app.add_subcommand("oracle", "Compare with the finite-difference solver");
  pair_option(oracle, &oracle_pair);
  oracle->add_option("--levels", cmd.n_levels, "Number of levels to compare");
  oracle->add_flag("--extrapolate", cmd.extrapolate, "Richardson step halving");
  oracle->add_flag("--eigenvectors", cmd.eigenvectors, "Write oracle eigenvectors as CSV");

  CLI::App* times = app.add_subcommand("times", "Tunneling and decay times of a doublet");
  times->add_option("--eplus", cmd.e_plus, "Upper doublet energy, eV");
  times->add_option("--eminus", cmd.e_minus, "Lower doublet energy, eV");
  times->add_option("--levels-json", cmd.levels_json, "Level file written by solve-pair");
  times->add_option("--near", cmd.near, "Incoming energy used to pick the doublet, eV");
  times->add_option("--k", cmd.k, "Maximum index k in (2k + 1) pi hbar / dE")->check(CLI::NonNegativeNumber);
  times->add_option("--decay-to", cmd.decay_to, "Lower level reached by decay, eV");

  CLI::App* cascade = app.add_subcommand("cascade", "Solve the four-well transfer chain");
  cascade->add_flag("--emit-profile", cmd.emit_profile, "Write profile.csv");
  cascade->add_flag("--emit-scan", cmd.emit_scan, "Write scan_pair<i>.csv around each doublet");

  CLI::App* calibrate = app.add_subcommand("calibrate", "Fit a distance or depth to target levels");
  pair_option(calibrate, &cmd.pair);
  calibrate->add_option("--mode", cmd.mode, "distance or depth");
  calibrate->add_option("--targets", cmd.targets, "Target energies, eV")->delimiter(',');
  calibrate->add_option("--min", cmd.range_min, "Lower end of the search range");
  calibrate->add_option("--max", cmd.range_max, "Upper end of the search range");
  calibrate->add_option("--frame", cmd.frame, "Target frame: global or local");
  calibrate->add_option("--write-config", cmd.write_config, "Write the updated configuration");

  CLI::App* wave = app.add_subcommand("wavefunction", "Reconstruct and sample one eigenfunction");
  pair_option(wave, &cmd.pair);
  wave->add_option("--level", cmd.level, "Level index within the pair");
  wave->add_option("--points", cmd.points, "Number of samples")->check(CLI::Range(2, 10000000));

  // CLI11 reports a stray word as a missing subcommand; name it instead.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" || arg == "--out") {
      ++i;
      continue;
    }
    if (arg.rfind("-", 0) == 0) continue;
    const auto& known = subcommands();
    if (std::find(known.begin(), known.end(), arg) == known.end()) {
      report_error(err, "usage", "unknown subcommand '" + arg + "'");
      err << app.help();
      return kConfigError;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    err << app.help();
    return kConfigError;
  }

  cmd.name = app.get_subcommands().front()->get_name();
  if (cmd.name == "oracle") cmd.pair = oracle_pair;
  if (cmd.name != "oracle" && cmd.pair == 0) {
    report_error(err, "usage", "--pair must be between 1 and 4");
    return kConfigError;
  }

  RunConfig config;
  try {
    config = config_path.empty() ? builtin_config() : load_config(config_path);
  } catch (const ConfigError& e) {
    report_error(err, "config", e.what(), e.field());
    return kConfigError;
  }
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.output.dir = env;
  if (!out_dir.empty()) config.output.dir = out_dir;
  return dispatch(cmd, config, out, err);
}

}  // namespace wellcascade::cli
