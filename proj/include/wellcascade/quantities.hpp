#pragma once

// Physical constants and the handful of unit conversions the solver needs.
// Working units: energies in eV, lengths in angstrom, times in seconds.

namespace wellcascade {

struct PhysicalConstants {
  double hbar_eV_s;
  double hbar_J_s;
  double electron_mass_kg;
  double eV_in_J;
  double hc_eV_nm;
  // k[1/A] = wavenumber_factor * sqrt(E[eV]) for a free electron.
  double wavenumber_factor;

  /// Builds a consistent record from the base SI constants; hbar_eV_s and
  /// wavenumber_factor are derived.
  static PhysicalConstants from_base(double hbar_J_s, double electron_mass_kg, double eV_in_J,
                                     double hc_eV_nm);

  /// Throws DomainError unless every field is finite and positive and the
  /// derived fields agree with the base ones to 10 significant digits.
  void validate() const;
};

/// CODATA 2018 values.
const PhysicalConstants& codata2018();

/// sqrt(2 m E) / hbar in 1/A. Negative offsets are rejected; callers below a
/// potential step use the evanescent rate of the reversed offset instead.
double wavenumber(double energy_offset_eV, const PhysicalConstants& c = codata2018());

double ev_to_joule(double energy_eV, const PhysicalConstants& c = codata2018());
double joule_to_ev(double energy_J, const PhysicalConstants& c = codata2018());

/// Photon wavelength in nm for a transition energy in eV.
double photon_wavelength(double delta_E_eV, const PhysicalConstants& c = codata2018());

/// hbar^2 / (2 m) in eV A^2, the kinetic prefactor of the Schroedinger operator.
double kinetic_prefactor(const PhysicalConstants& c = codata2018());

constexpr double kPicosecond = 1e-12;
constexpr double kFemtosecond = 1e-15;

}  // namespace wellcascade
