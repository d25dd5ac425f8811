#include "wellcascade/quantities.hpp"

#include <cmath>
#include <string>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace {

constexpr double kAngstromPerMetre = 1e10;

bool agrees(double a, double b) { return std::abs(a - b) <= 1e-10 * std::abs(b); }

}  // namespace

PhysicalConstants PhysicalConstants::from_base(double hbar_J_s, double electron_mass_kg,
                                               double eV_in_J, double hc_eV_nm) {
  PhysicalConstants c{};
  c.hbar_J_s = hbar_J_s;
  c.electron_mass_kg = electron_mass_kg;
  c.eV_in_J = eV_in_J;
  c.hc_eV_nm = hc_eV_nm;
  c.hbar_eV_s = hbar_J_s / eV_in_J;
  c.wavenumber_factor = std::sqrt(2.0 * electron_mass_kg * eV_in_J) / hbar_J_s / kAngstromPerMetre;
  c.validate();
  return c;
}

void PhysicalConstants::validate() const {
  const double fields[] = {hbar_eV_s, hbar_J_s, electron_mass_kg,
                           eV_in_J,   hc_eV_nm, wavenumber_factor};
  for (double f : fields) {
    if (!std::isfinite(f) || f <= 0.0) {
      throw DomainError("physical constants must be finite and strictly positive");
    }
  }
  if (!agrees(hbar_eV_s, hbar_J_s / eV_in_J)) {
    throw DomainError("hbar_eV_s is inconsistent with hbar_J_s / eV_in_J");
  }
  const double k = std::sqrt(2.0 * electron_mass_kg * eV_in_J) / hbar_J_s / kAngstromPerMetre;
  if (!agrees(wavenumber_factor, k)) {
    throw DomainError("wavenumber_factor is inconsistent with electron mass and hbar");
  }
}

const PhysicalConstants& codata2018() {
  // h = 6.62607015e-34 J s and c = 299792458 m/s are exact in SI 2019.
  static const PhysicalConstants kCodata = PhysicalConstants::from_base(
      1.054571817e-34, 9.1093837015e-31, 1.602176634e-19,
      6.62607015e-34 * 299792458.0 / 1.602176634e-19 * 1e9);
  return kCodata;
}

double wavenumber(double energy_offset_eV, const PhysicalConstants& c) {
  if (!(energy_offset_eV >= 0.0)) {
    throw DomainError("wavenumber: energy offset must be non-negative, got " +
                      std::to_string(energy_offset_eV));
  }
  return c.wavenumber_factor * std::sqrt(energy_offset_eV);
}

double ev_to_joule(double energy_eV, const PhysicalConstants& c) { return energy_eV * c.eV_in_J; }

double joule_to_ev(double energy_J, const PhysicalConstants& c) { return energy_J / c.eV_in_J; }

double photon_wavelength(double delta_E_eV, const PhysicalConstants& c) {
  if (!(delta_E_eV > 0.0)) {
    throw DomainError("photon_wavelength: transition energy must be positive");
  }
  return c.hc_eV_nm / delta_E_eV;
}

double kinetic_prefactor(const PhysicalConstants& c) {
  return 1.0 / (c.wavenumber_factor * c.wavenumber_factor);
}

}  // namespace wellcascade
