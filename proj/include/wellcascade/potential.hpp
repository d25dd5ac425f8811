#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wellcascade {

/// One asymmetric double well between infinite walls.
///
/// Canonical layout used by every pair-level routine, with x in angstrom:
///
///     wall | shallow well [0, a] | barrier [a, L] | deep well [L, L + a] | wall
///
/// Energies are measured from the bottom of the deep well, so the barrier top
/// sits at v_deep and the shallow floor at v_deep - v_shallow.
struct WellPair {
  double width;       // a, A
  double distance;    // L, centre-to-centre, A
  double v_shallow;   // depth of the shallower well, eV
  double v_deep;      // depth of the deeper well, eV

  double barrier_width() const { return distance - width; }
  double shallow_floor() const { return v_deep - v_shallow; }
  double right_wall() const { return distance + width; }

  /// Throws DomainError on a <= 0, L <= a or a depth ordering other than
  /// 0 < v_shallow < v_deep.
  void validate() const;
  bool operator==(const WellPair&) const = default;
};

/// Validated constructor.
WellPair make_pair(double width, double distance, double v_shallow, double v_deep);

/// Four-well chain. Well i and well i + 1 are joined by distances[i]; an
/// optional fourth distance closes the ring between well 4 and well 1.
struct CascadeSpec {
  std::array<double, 4> widths{};
  std::vector<double> distances;
  std::array<double, 4> depths{};
  std::array<std::string, 4> labels{"P", "B", "H", "Q"};

  static constexpr int kWells = 4;
  static constexpr int kActivePairs = 3;

  double max_depth() const;
  /// Floor of well i above the global zero (the deepest well's bottom).
  double floor(int well) const;
  /// Energy shift that maps pair-local energies of (i, j) onto the global scale.
  double pair_shift(int i, int j) const;
  /// Pair (i, j) in canonical orientation (shallow left, deep right). Throws if
  /// the two widths differ, since the matching equations assume one width.
  WellPair pair(int i, int j, double distance) const;
  /// Pair (i, i + 1) for i in [0, 3), or the closing pair (3, 0) for i = 3.
  WellPair active_pair(int i) const;
  bool has_closing_distance() const { return distances.size() == 4; }

  void validate() const;
  bool operator==(const CascadeSpec&) const = default;
};

/// Piecewise-constant potential between two infinite walls.
struct PotentialProfile {
  std::vector<double> breakpoints;     // strictly increasing, inside (x_min, x_max)
  std::vector<double> segment_values;  // eV, breakpoints.size() + 1 entries
  double x_min = 0.0;
  double x_max = 0.0;

  double at(double x) const;
  /// Mean of the potential over [x0, x1] (exact for piecewise constants).
  double average(double x0, double x1) const;
  double min_value() const;
  double max_value() const;
  /// Integral of (V - min V) over the domain.
  double excess_area() const;
  std::size_t segment_index(double x) const;

  void validate() const;
};

PotentialProfile pair_profile(const WellPair& pair);

/// Linear chain of the four wells (the closing distance is not drawn).
/// Barriers sit at the maximum depth, well i's floor at max_depth - depth_i.
PotentialProfile cascade_profile(const CascadeSpec& spec);

/// Two-column CSV, header "x_A,V_eV". Each breakpoint is emitted twice so the
/// steps plot as vertical edges.
void write_profile_csv(std::ostream& os, const PotentialProfile& profile);

}  // namespace wellcascade
