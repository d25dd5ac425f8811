#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wellcascade/cascade.hpp"
#include "wellcascade/config.hpp"
#include "wellcascade/errors.hpp"
#include "wellcascade/report_json.hpp"
#include "wellcascade/wavefunctions.hpp"

namespace py = pybind11;
using namespace wellcascade;

namespace {

py::object branch(const BranchValue& b) {
  return b.pole ? py::none() : py::object(py::float_(b.value));
}

py::object to_python(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

}  // namespace

PYBIND11_MODULE(wellcascade, m) {
  m.doc() = "Bound states, resonant doublets and transfer times of coupled square wells";

  static py::exception<ComputationError> computation_error(m, "ComputationError",
                                                           PyExc_RuntimeError);
  static py::exception<ResonanceNotFound> resonance_error(m, "ResonanceNotFound",
                                                          computation_error.ptr());
  static py::exception<CalibrationError> calibration_error(m, "CalibrationError",
                                                           computation_error.ptr());
  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResonanceNotFound& e) {
      py::set_error(resonance_error, e.what());
    } catch (const CalibrationError& e) {
      py::set_error(calibration_error, e.what());
    } catch (const ComputationError& e) {
      py::set_error(computation_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def_readonly("hbar_eV_s", &PhysicalConstants::hbar_eV_s)
      .def_readonly("hbar_J_s", &PhysicalConstants::hbar_J_s)
      .def_readonly("electron_mass_kg", &PhysicalConstants::electron_mass_kg)
      .def_readonly("eV_in_J", &PhysicalConstants::eV_in_J)
      .def_readonly("hc_eV_nm", &PhysicalConstants::hc_eV_nm)
      .def_readonly("wavenumber_factor", &PhysicalConstants::wavenumber_factor);
  m.def("codata2018", &codata2018, py::return_value_policy::copy);
  m.def("photon_wavelength", [](double de) { return photon_wavelength(de); }, py::arg("delta_E_eV"));

  py::class_<WellPair>(m, "WellPair")
      .def(py::init(&make_pair), py::arg("width"), py::arg("distance"), py::arg("v_shallow"),
           py::arg("v_deep"))
      .def_readonly("width", &WellPair::width)
      .def_readonly("distance", &WellPair::distance)
      .def_readonly("v_shallow", &WellPair::v_shallow)
      .def_readonly("v_deep", &WellPair::v_deep)
      .def_property_readonly("barrier_width", &WellPair::barrier_width)
      .def_property_readonly("shallow_floor", &WellPair::shallow_floor)
      .def_property_readonly("right_wall", &WellPair::right_wall)
      .def(py::self == py::self)
      .def("__repr__", [](const WellPair& p) {
        return "WellPair(width=" + py::repr(py::float_(p.width)).cast<std::string>() +
               ", distance=" + py::repr(py::float_(p.distance)).cast<std::string>() +
               ", v_shallow=" + py::repr(py::float_(p.v_shallow)).cast<std::string>() +
               ", v_deep=" + py::repr(py::float_(p.v_deep)).cast<std::string>() + ")";
      });

  py::class_<PotentialProfile>(m, "PotentialProfile")
      .def_readonly("breakpoints", &PotentialProfile::breakpoints)
      .def_readonly("segment_values", &PotentialProfile::segment_values)
      .def_readonly("x_min", &PotentialProfile::x_min)
      .def_readonly("x_max", &PotentialProfile::x_max)
      .def("at", &PotentialProfile::at, py::arg("x"));
  m.def("pair_profile", &pair_profile, py::arg("pair"));

  py::class_<CascadeSpec>(m, "CascadeSpec")
      .def_readonly("widths", &CascadeSpec::widths)
      .def_readonly("distances", &CascadeSpec::distances)
      .def_readonly("depths", &CascadeSpec::depths)
      .def_readonly("labels", &CascadeSpec::labels)
      .def("floor", &CascadeSpec::floor, py::arg("well"))
      .def("active_pair", &CascadeSpec::active_pair, py::arg("index"))
      .def("pair_shift", &CascadeSpec::pair_shift, py::arg("i"), py::arg("j"));
  m.def("cascade_profile", &cascade_profile, py::arg("spec"));

  py::enum_<Regime>(m, "Regime").value("A", Regime::A).value("B", Regime::B);
  m.def("classify_regime", &classify_regime, py::arg("pair"), py::arg("energy_eV"));
  m.def("lhs", [](const WellPair& p, double e) { return branch(lhs(p, e)); }, py::arg("pair"),
        py::arg("energy_eV"), "Left matching function, or None at a pole.");
  m.def("rhs", [](const WellPair& p, double e) { return branch(rhs(p, e)); }, py::arg("pair"),
        py::arg("energy_eV"), "Right matching function, or None at a pole.");
  m.def("mismatch", [](const WellPair& p, double e) { return branch(mismatch(p, e)); },
        py::arg("pair"), py::arg("energy_eV"));
  m.def("secular", [](const WellPair& p, double e) { return secular(p, e); }, py::arg("pair"),
        py::arg("energy_eV"));
  m.def("count_below", [](const WellPair& p, double e) { return count_below(p, e); },
        py::arg("pair"), py::arg("energy_eV"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](double grid_step, double refine_tol, double residual_tol,
                       std::optional<int> max_levels) {
             SolverConfig c{grid_step, refine_tol, residual_tol, max_levels};
             c.validate();
             return c;
           }),
           py::arg("grid_step") = 2e-5, py::arg("refine_tol") = 1e-9,
           py::arg("residual_tol") = 1e-8, py::arg("max_levels") = py::none())
      .def_readonly("grid_step", &SolverConfig::grid_step)
      .def_readonly("refine_tol", &SolverConfig::refine_tol)
      .def_readonly("residual_tol", &SolverConfig::residual_tol)
      .def_readonly("max_levels", &SolverConfig::max_levels);

  py::class_<Level>(m, "Level")
      .def_readonly("energy", &Level::energy)
      .def_readonly("regime", &Level::regime)
      .def_readonly("residual", &Level::residual)
      .def_readonly("bracket_lo", &Level::bracket_lo)
      .def_readonly("bracket_hi", &Level::bracket_hi)
      .def_readonly("index", &Level::index)
      .def("__repr__", [](const Level& l) {
        return "Level(index=" + std::to_string(l.index) +
               ", energy=" + py::repr(py::float_(l.energy)).cast<std::string>() + ")";
      });

  m.def(
      "find_levels",
      [](const WellPair& p, const SolverConfig& cfg, double lo, double hi) {
        return find_levels(p, cfg, {lo, hi}).levels;
      },
      py::arg("pair"), py::arg("config") = SolverConfig{}, py::arg("emin") = 0.0,
      py::arg("emax") = 0.0, "Bound states in (emin, emax); emax = 0 means the barrier top.");
  m.def("count_levels", [](const WellPair& p, const SolverConfig& c) { return count_levels(p, c); },
        py::arg("pair"), py::arg("config") = SolverConfig{});

  py::class_<CalibrationResult>(m, "CalibrationResult")
      .def_readonly("value", &CalibrationResult::value)
      .def_readonly("misfit", &CalibrationResult::misfit)
      .def_readonly("matched_levels", &CalibrationResult::matched_levels)
      .def_readonly("evaluations", &CalibrationResult::evaluations);
  m.def(
      "calibrate_distance",
      [](const WellPair& p, const std::vector<double>& targets, double lo, double hi) {
        return calibrate_distance(p, targets, {lo, hi});
      },
      py::arg("template"), py::arg("targets"), py::arg("lo"), py::arg("hi"));

  py::class_<FdConfig>(m, "FdConfig")
      .def(py::init([](int grid_points, double padding, bool extrapolate) {
             FdConfig c{grid_points, padding, extrapolate};
             c.validate();
             return c;
           }),
           py::arg("grid_points") = 20001, py::arg("padding") = 0.0,
           py::arg("extrapolate") = false)
      .def_readonly("grid_points", &FdConfig::grid_points)
      .def_readonly("padding", &FdConfig::padding)
      .def_readonly("extrapolate", &FdConfig::extrapolate);
  m.def(
      "fd_levels",
      [](const PotentialProfile& prof, int n, const FdConfig& cfg) {
        return fd_levels(prof, n, cfg).levels;
      },
      py::arg("profile"), py::arg("n_levels"), py::arg("config") = FdConfig{});
  m.def(
      "fd_eigenvector",
      [](const PotentialProfile& prof, int index, const FdConfig& cfg) {
        const FdEigenvector v = fd_eigenvector(prof, index, cfg);
        return py::make_tuple(v.energy, v.x, v.psi);
      },
      py::arg("profile"), py::arg("index"), py::arg("config") = FdConfig{},
      "Returns (energy, x, psi).");

  py::class_<ResonantPair>(m, "ResonantPair")
      .def(py::init(&make_resonant_pair), py::arg("e_plus"), py::arg("e_minus"))
      .def_readonly("e_plus", &ResonantPair::e_plus)
      .def_readonly("e_minus", &ResonantPair::e_minus)
      .def_property_readonly("splitting", &ResonantPair::splitting);
  m.def("rabi_probability", [](double t, const ResonantPair& p) { return rabi_probability(t, p); },
        py::arg("t_seconds"), py::arg("pair"));
  m.def("tunneling_time", [](const ResonantPair& p, int k) { return tunneling_time(p, k); },
        py::arg("pair"), py::arg("k") = 0);
  m.def("first_maximum_time", [](const ResonantPair& p) { return first_maximum_time(p); },
        py::arg("pair"));
  m.def("decay_time", [](double gap) { return decay_time(gap); }, py::arg("delta_E_eV"));

  py::class_<PiecewiseWavefunction>(m, "Wavefunction")
      .def_readonly("energy", &PiecewiseWavefunction::energy)
      .def_readonly("regime", &PiecewiseWavefunction::regime)
      .def_readonly("wall_residual", &PiecewiseWavefunction::wall_residual)
      .def("__call__", &PiecewiseWavefunction::value, py::arg("x"))
      .def("derivative", &PiecewiseWavefunction::derivative, py::arg("x"))
      .def("node_count", &PiecewiseWavefunction::node_count)
      .def("matching_residual", &PiecewiseWavefunction::matching_residual)
      .def("sample", &sample_wavefunction, py::arg("n_points"))
      .def("probability_between", &probability_between, py::arg("x0"), py::arg("x1"));
  m.def(
      "build_wavefunction",
      [](const WellPair& p, const Level& l) { return build_wavefunction(p, l); }, py::arg("pair"),
      py::arg("level"));

  py::class_<RunConfig>(m, "RunConfig")
      .def_readonly("spec", &RunConfig::spec)
      .def_readonly("solver", &RunConfig::solver)
      .def_readonly("oracle", &RunConfig::oracle)
      .def("serialize", &serialize_config)
      .def(py::self == py::self);
  m.def("builtin_config", &builtin_config);
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  m.def(
      "solve_cascade",
      [](std::optional<RunConfig> cfg) {
        const RunConfig c = cfg ? *cfg : builtin_config();
        return to_python(report_document(
            solve_cascade(c.spec, c.solver, c.cascade_options(), c.physical_constants())));
      },
      py::arg("config") = py::none(),
      "Full cascade report as a dict (the content of report.json).");
}
