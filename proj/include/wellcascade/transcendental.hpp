#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "wellcascade/potential.hpp"
#include "wellcascade/quantities.hpp"

namespace wellcascade {

/// Form of the solution in the shallow well.
/// A: E below the shallow floor, evanescent (e^{+-k1 x}).
/// B: E at or above the shallow floor, oscillatory (sin/cos k1 x).
enum class Regime { A, B };

std::string_view to_string(Regime r);

struct WavenumberSet {
  double k1;    // shallow well: decay rate (A) or wavenumber (B), 1/A
  double beta;  // barrier decay rate, 1/A
  double k2;    // deep well wavenumber, 1/A
  Regime regime;
};

/// Throws DomainError unless 0 < E < v_deep. E == shallow floor is regime B.
Regime classify_regime(const WellPair& pair, double energy_eV);

WavenumberSet wavenumbers(const WellPair& pair, double energy_eV,
                          const PhysicalConstants& c = codata2018());

/// A side of the matching equation. `pole` is set when the denominator is
/// below 1e-12 of its natural scale; `value` is then meaningless.
struct BranchValue {
  double value;
  bool pole;
};

// The matching condition is f(E) = g(E) with
//
//   f = (beta + k1 cot k1a) e^{beta(L-a)} / (beta - k1 cot k1a)          (B)
//   f = (beta + k1 coth k1a) e^{beta(L-a)} / (beta - k1 coth k1a)        (A)
//   g = (beta - k2 cot k2a) e^{-beta(L-a)} / (beta + k2 cot k2a)
//
// lhs/rhs return f and g multiplied by the common factor e^{-beta(L-a)}, with
// the trigonometric/hyperbolic ratios cleared of their k1a = n pi
// singularities and the exponentials of the evanescent branch pre-scaled.
// Both sides keep magnitudes near unity; the root set is unchanged.

BranchValue lhs(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());
BranchValue rhs(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());

/// lhs - rhs; pole when either side is at a pole.
BranchValue mismatch(const WellPair& pair, double energy_eV,
                     const PhysicalConstants& c = codata2018());

/// Pole-free form of the same condition: (f - g) multiplied through by both
/// denominators and normalised by positive factors. Continuous on
/// (0, v_deep), including across the regime boundary; its zeros are exactly
/// the bound-state energies. This is what the eigensolver brackets.
double secular(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());

/// Number of bound states strictly below E, from the zero count of the
/// solution launched at the left wall (Sturm oscillation theorem).
int count_below(const WellPair& pair, double energy_eV,
                const PhysicalConstants& c = codata2018());

/// f0, g0, f1, g1 in their original closed form, without any
/// rescaling. Useful for plots in the original convention and as a check on
/// the rescaled forms; overflow-prone for wide evanescent regions.
namespace unscaled {
double f0(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());
double g0(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());
double f1(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());
double g1(const WellPair& pair, double energy_eV, const PhysicalConstants& c = codata2018());
}  // namespace unscaled

struct ScanRow {
  double energy_eV;  // in the caller's reference frame
  double lhs;       // NaN at a pole
  double rhs;       // NaN at a pole
  double mismatch;  // NaN when either side is at a pole
  Regime regime;
  bool pole;
};

/// Evaluates the matching functions on a uniform grid. `energy_shift` is added
/// to the reported energies (pair-local -> global); the grid itself is given
/// in the shifted frame. Energies outside (0, v_deep) locally are skipped.
std::vector<ScanRow> scan(const WellPair& pair, double emin, double emax, double step,
                          double energy_shift = 0.0, const PhysicalConstants& c = codata2018());

/// Header: E_eV,lhs,rhs,mismatch,regime,pole_flag
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace wellcascade
