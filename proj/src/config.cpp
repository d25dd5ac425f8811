#include "wellcascade/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> kSchema = {
      {"wells", {"labels", "width", "widths", "depths", "distances"}},
      {"solver", {"grid_step", "refine_tol", "residual_tol", "max_levels"}},
      {"oracle", {"grid_points", "padding", "extrapolate", "cross_check"}},
      {"cascade", {"resonance_window", "excitation_wavelength_nm"}},
      {"calibration",
       {"targets_1", "targets_2", "targets_3", "distance_min", "distance_max",
        "misfit_threshold"}},
      {"constants", {"hbar_J_s", "electron_mass_kg", "eV_in_J", "hc_eV_nm"}},
      {"output", {"dir", "formats"}},
  };
  return kSchema;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  if (!value.empty() && value.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(field, "expected a number, got '" + t + "'");
  }
  return v;
}

int to_int(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(field, "expected an integer, got '" + t + "'");
  }
  return v;
}

bool to_bool(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(field, "expected true or false, got '" + t + "'");
}

std::vector<double> to_doubles(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(to_double(field, item));
  return out;
}

// Section/key lookup; keys may contain dots, so the path separator is disabled.
class Sections {
 public:
  explicit Sections(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    if (!s) return std::nullopt;
    const auto v = s->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return v->data();
  }

 private:
  const pt::ptree& tree_;
};

void check_known_keys(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section, "key outside of any section");
    }
    if (it == schema().end()) throw ConfigError(section, "unknown section");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ConfigError(section + "." + key, "unknown key");
    }
  }
}

template <typename T>
void assign_double(const Sections& s, const char* section, const char* key, T& target) {
  if (const auto v = s.get(section, key)) target = to_double(std::string(section) + "." + key, *v);
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(xs[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

}  // namespace

bool OutputSettings::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

PhysicalConstants RunConfig::physical_constants() const {
  if (constants.empty()) return codata2018();
  const PhysicalConstants& base = codata2018();
  return PhysicalConstants::from_base(constants.hbar_J_s.value_or(base.hbar_J_s),
                                      constants.electron_mass_kg.value_or(base.electron_mass_kg),
                                      constants.eV_in_J.value_or(base.eV_in_J),
                                      constants.hc_eV_nm.value_or(base.hc_eV_nm));
}

CascadeOptions RunConfig::cascade_options() const {
  CascadeOptions o = cascade;
  o.oracle = oracle_cross_check ? std::optional<FdConfig>(oracle) : std::nullopt;
  return o;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", std::string("malformed configuration: ") + e.message() + " (line " +
                              std::to_string(e.line()) + ")");
  }
  check_known_keys(tree);
  const Sections s(tree);

  std::vector<std::string> missing;
  const auto depths = s.get("wells", "depths");
  const auto distances = s.get("wells", "distances");
  const auto width = s.get("wells", "width");
  const auto widths = s.get("wells", "widths");
  if (!width && !widths) missing.push_back("wells.width (or wells.widths)");
  if (!depths) missing.push_back("wells.depths");
  if (!distances) missing.push_back("wells.distances");
  if (!missing.empty()) throw ConfigError("", "missing required keys: " + join(missing));
  if (width && widths) throw ConfigError("wells.widths", "give either width or widths, not both");

  RunConfig cfg;
  cfg.cascade.oracle.reset();
  // Wells.
  if (width) {
    cfg.spec.widths.fill(to_double("wells.width", *width));
  } else {
    const std::vector<double> w = to_doubles("wells.widths", *widths);
    if (w.size() != 4) throw ConfigError("wells.widths", "expected 4 values");
    std::copy(w.begin(), w.end(), cfg.spec.widths.begin());
  }
  const std::vector<double> d = to_doubles("wells.depths", *depths);
  if (d.size() != 4) throw ConfigError("wells.depths", "expected 4 values");
  std::copy(d.begin(), d.end(), cfg.spec.depths.begin());
  cfg.spec.distances = to_doubles("wells.distances", *distances);
  if (cfg.spec.distances.size() != 3 && cfg.spec.distances.size() != 4) {
    throw ConfigError("wells.distances", "expected 3 values (or 4 with the closing pair)");
  }
  if (const auto labels = s.get("wells", "labels")) {
    const std::vector<std::string> l = split_list(*labels);
    if (l.size() != 4 || std::any_of(l.begin(), l.end(), [](const auto& x) { return x.empty(); })) {
      throw ConfigError("wells.labels", "expected 4 non-empty labels");
    }
    std::copy(l.begin(), l.end(), cfg.spec.labels.begin());
  }
  try {
    cfg.spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError("wells", e.what());
  }

  // Solver.
  assign_double(s, "solver", "grid_step", cfg.solver.grid_step);
  assign_double(s, "solver", "refine_tol", cfg.solver.refine_tol);
  assign_double(s, "solver", "residual_tol", cfg.solver.residual_tol);
  if (const auto v = s.get("solver", "max_levels")) {
    cfg.solver.max_levels = to_int("solver.max_levels", *v);
  }
  try {
    cfg.solver.validate();
  } catch (const DomainError& e) {
    throw ConfigError("solver", e.what());
  }

  // Oracle.
  if (const auto v = s.get("oracle", "grid_points")) {
    cfg.oracle.grid_points = to_int("oracle.grid_points", *v);
  }
  assign_double(s, "oracle", "padding", cfg.oracle.padding);
  if (const auto v = s.get("oracle", "extrapolate")) {
    cfg.oracle.extrapolate = to_bool("oracle.extrapolate", *v);
  }
  if (const auto v = s.get("oracle", "cross_check")) {
    cfg.oracle_cross_check = to_bool("oracle.cross_check", *v);
  }
  try {
    cfg.oracle.validate();
  } catch (const DomainError& e) {
    throw ConfigError("oracle", e.what());
  }

  // Cascade.
  assign_double(s, "cascade", "resonance_window", cfg.cascade.resonance_window);
  assign_double(s, "cascade", "excitation_wavelength_nm", cfg.cascade.excitation_wavelength_nm);
  try {
    cfg.cascade.validate();
  } catch (const DomainError& e) {
    throw ConfigError("cascade", e.what());
  }

  // Calibration.
  for (int p = 0; p < 3; ++p) {
    const std::string key = "targets_" + std::to_string(p + 1);
    if (const auto v = s.get("calibration", key)) {
      cfg.calibration.targets[static_cast<std::size_t>(p)] = to_doubles("calibration." + key, *v);
    }
  }
  assign_double(s, "calibration", "distance_min", cfg.calibration.distance_range.lo);
  assign_double(s, "calibration", "distance_max", cfg.calibration.distance_range.hi);
  assign_double(s, "calibration", "misfit_threshold", cfg.calibration.misfit_threshold);
  if (!(cfg.calibration.distance_range.hi >= cfg.calibration.distance_range.lo)) {
    throw ConfigError("calibration.distance_max", "must not be below distance_min");
  }

  // Constants.
  auto optional_double = [&](const char* key, std::optional<double>& target) {
    if (const auto v = s.get("constants", key)) {
      target = to_double(std::string("constants.") + key, *v);
    }
  };
  optional_double("hbar_J_s", cfg.constants.hbar_J_s);
  optional_double("electron_mass_kg", cfg.constants.electron_mass_kg);
  optional_double("eV_in_J", cfg.constants.eV_in_J);
  optional_double("hc_eV_nm", cfg.constants.hc_eV_nm);
  try {
    cfg.physical_constants();
  } catch (const DomainError& e) {
    throw ConfigError("constants", e.what());
  }

  // Output.
  if (const auto v = s.get("output", "dir")) cfg.output.dir = trim(*v);
  if (const auto v = s.get("output", "formats")) {
    cfg.output.formats = split_list(*v);
    for (const std::string& f : cfg.output.formats) {
      if (f != "json" && f != "csv" && f != "table") {
        throw ConfigError("output.formats", "unknown format '" + f + "' (json, csv, table)");
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read configuration file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  const auto& w = cfg.spec.widths;
  os << "[wells]\n";
  os << "labels = "
     << join(std::vector<std::string>(cfg.spec.labels.begin(), cfg.spec.labels.end())) << '\n';
  if (std::all_of(w.begin(), w.end(), [&](double x) { return x == w[0]; })) {
    os << "width = " << format_double(w[0]) << '\n';
  } else {
    os << "widths = " << join(std::vector<double>(w.begin(), w.end())) << '\n';
  }
  os << "depths = "
     << join(std::vector<double>(cfg.spec.depths.begin(), cfg.spec.depths.end())) << '\n';
  os << "distances = " << join(cfg.spec.distances) << "\n\n";

  os << "[solver]\n";
  os << "grid_step = " << format_double(cfg.solver.grid_step) << '\n';
  os << "refine_tol = " << format_double(cfg.solver.refine_tol) << '\n';
  os << "residual_tol = " << format_double(cfg.solver.residual_tol) << '\n';
  if (cfg.solver.max_levels) os << "max_levels = " << *cfg.solver.max_levels << '\n';
  os << '\n';

  os << "[oracle]\n";
  os << "grid_points = " << cfg.oracle.grid_points << '\n';
  os << "padding = " << format_double(cfg.oracle.padding) << '\n';
  os << "extrapolate = " << (cfg.oracle.extrapolate ? "true" : "false") << '\n';
  os << "cross_check = " << (cfg.oracle_cross_check ? "true" : "false") << "\n\n";

  os << "[cascade]\n";
  os << "resonance_window = " << format_double(cfg.cascade.resonance_window) << '\n';
  os << "excitation_wavelength_nm = " << format_double(cfg.cascade.excitation_wavelength_nm)
     << "\n\n";

  os << "[calibration]\n";
  for (std::size_t p = 0; p < 3; ++p) {
    if (!cfg.calibration.targets[p].empty()) {
      os << "targets_" << p + 1 << " = " << join(cfg.calibration.targets[p]) << '\n';
    }
  }
  os << "distance_min = " << format_double(cfg.calibration.distance_range.lo) << '\n';
  os << "distance_max = " << format_double(cfg.calibration.distance_range.hi) << '\n';
  os << "misfit_threshold = " << format_double(cfg.calibration.misfit_threshold) << "\n\n";

  if (!cfg.constants.empty()) {
    os << "[constants]\n";
    const auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) os << key << " = " << format_double(*v) << '\n';
    };
    put("hbar_J_s", cfg.constants.hbar_J_s);
    put("electron_mass_kg", cfg.constants.electron_mass_kg);
    put("eV_in_J", cfg.constants.eV_in_J);
    put("hc_eV_nm", cfg.constants.hc_eV_nm);
    os << '\n';
  }

  os << "[output]\n";
  os << "dir = " << cfg.output.dir << '\n';
  os << "formats = " << join(cfg.output.formats) << '\n';
  return os.str();
}

RunConfig builtin_config() {
  RunConfig cfg;
  cfg.cascade.oracle.reset();
  cfg.spec.widths.fill(43.85);
  cfg.spec.depths = {1.585, 0.272, 0.524, 0.95};
  // Output of `calibrate --pair N` for N = 1, 2, 3 against the targets below.
  cfg.spec.distances = {60.18879575757995, 60.0, 60.0};
  cfg.spec.labels = {"P", "B", "H", "Q"};
  cfg.calibration.targets = {std::vector<double>{1.445, 1.460}, std::vector<double>{1.329, 1.335},
                             std::vector<double>{1.0785, 1.0787}};
  return cfg;
}

}  // namespace wellcascade
