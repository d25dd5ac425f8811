#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wellcascade/eigensolver.hpp"
#include "wellcascade/potential.hpp"
#include "wellcascade/transcendental.hpp"

namespace wellcascade {

/// Bound-state wavefunction of a WellPair in closed form, region by region:
///
///   II  (shallow, [0, a]):  A1 e^{k1 x} + A2 e^{-k1 x}      regime A
///                           A1 sin(k1 x) + A2 cos(k1 x)     regime B
///   III (barrier, [a, L]):  B e^{beta u} + C e^{-beta u},   u = x - a
///   IV  (deep, [L, L + a]): D1 sin(k2 v) + D2 cos(k2 v),    v = x - L
///
/// and zero outside. Regions III and IV use local origins so the
/// coefficients stay well scaled; the wall at x = 0 fixes the shallow-well
/// combination. Sign convention: psi'(0) > 0.
struct PiecewiseWavefunction {
  Regime regime;
  double energy;  // eV, pair-local
  double k1, beta, k2;
  double a1, a2, b, c, d1, d2;
  std::array<double, 4> region_bounds;  // 0, a, L, L + a
  bool normalized = false;
  double peak = 0.0;           // max |psi| on a fine sample
  double wall_residual = 0.0;  // |psi(L + a)| / max |psi| before normalisation

  double value(double x) const;
  double derivative(double x) const;
  /// Zeros strictly inside the domain, counted analytically per region.
  int node_count() const;
  /// Relative mismatch of psi and psi' across the interior boundaries,
  /// evaluated from the closed forms on each side.
  double matching_residual() const;
};

/// Builds and L2-normalises the wavefunction of `level`. Throws
/// ComputationError when the right-wall residual exceeds `wall_tolerance`,
/// i.e. the energy is not an eigenvalue of the pair.
PiecewiseWavefunction build_wavefunction(const WellPair& pair, const Level& level,
                                         double wall_tolerance = 1e-6,
                                         const PhysicalConstants& c = codata2018());

/// Uniform samples (x, psi) over [0, L + a], both walls included.
std::vector<std::pair<double, double>> sample_wavefunction(const PiecewiseWavefunction& wf,
                                                           int n_points);

/// Integral of |psi|^2 over [x0, x1] by composite Simpson on the closed form.
double probability_between(const PiecewiseWavefunction& wf, double x0, double x1);

void write_wavefunction_csv(std::ostream& os,
                            const std::vector<std::pair<double, double>>& samples);

}  // namespace wellcascade
