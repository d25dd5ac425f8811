#pragma once

#include <optional>
#include <string>

#include "wellcascade/quantities.hpp"

namespace wellcascade {

/// Near-degenerate doublet produced by two coupled wells.
struct ResonantPair {
  double e_plus;   // eV
  double e_minus;  // eV
  // Unperturbed single-well levels and coupling, when known. Without them the
  // resonant approximation (prefactor 1) is used.
  std::optional<double> e1;
  std::optional<double> e2;
  std::optional<double> w12;

  double splitting() const { return e_plus - e_minus; }
  bool resonant_mode() const { return !(e1 && e2 && w12); }
  void validate() const;
};

ResonantPair make_resonant_pair(double e_plus, double e_minus);

/// Rabi transfer probability
///   P(t) = 4|W|^2 / ((E1 - E2)^2 + 4|W|^2) * sin^2((E+ - E-) t / 2 hbar).
double rabi_probability(double t_seconds, const ResonantPair& pair,
                        const PhysicalConstants& c = codata2018());

/// Prefactor of the sine; exactly 1 in resonant mode.
double rabi_amplitude(const ResonantPair& pair);

/// Time of the k-th transfer maximum, (2k + 1) pi hbar / (E+ - E-).
double tunneling_time(const ResonantPair& pair, int k = 0,
                      const PhysicalConstants& c = codata2018());

/// Uncertainty-principle lower bound hbar / (2 dE) for a decay across gap dE.
double decay_time(double delta_E_eV, const PhysicalConstants& c = codata2018());

/// First maximum of rabi_probability located by sampling plus golden-section
/// refinement, independently of the closed form in tunneling_time.
double first_maximum_time(const ResonantPair& pair, const PhysicalConstants& c = codata2018());

struct TransferStep {
  std::string from_site;
  std::string to_site;
  ResonantPair resonance;
  double incoming_energy;  // eV, global
  double decay_from;       // eV, global (upper member of the doublet)
  double decay_to;         // eV, global
  double tunneling_time;   // s
  double decay_gap;        // eV
  double decay_time;       // s

  double tunneling_to_decay_ratio() const { return tunneling_time / decay_time; }
};

}  // namespace wellcascade
