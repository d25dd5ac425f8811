#include "wellcascade/potential.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace {

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void WellPair::validate() const {
  if (!finite_all({width, distance, v_shallow, v_deep})) {
    throw DomainError("well pair fields must be finite");
  }
  if (width <= 0.0) throw DomainError("well width must be positive");
  if (distance <= width) {
    throw DomainError("well distance L must exceed the width a (barrier width L - a > 0)");
  }
  if (v_shallow <= 0.0) throw DomainError("shallow well depth must be positive");
  if (v_shallow >= v_deep) {
    throw DomainError("double well must be strictly asymmetric: v_shallow < v_deep");
  }
}

WellPair make_pair(double width, double distance, double v_shallow, double v_deep) {
  WellPair p{width, distance, v_shallow, v_deep};
  p.validate();
  return p;
}

double CascadeSpec::max_depth() const { return *std::max_element(depths.begin(), depths.end()); }

double CascadeSpec::floor(int well) const { return max_depth() - depths.at(well); }

double CascadeSpec::pair_shift(int i, int j) const {
  return max_depth() - std::max(depths.at(i), depths.at(j));
}

WellPair CascadeSpec::pair(int i, int j, double distance) const {
  if (widths.at(i) != widths.at(j)) {
    std::ostringstream os;
    os << "wells " << labels.at(i) << " and " << labels.at(j)
       << " have different widths; the pair equations need a common width";
    throw DomainError(os.str());
  }
  return make_pair(widths[i], distance, std::min(depths[i], depths[j]),
                   std::max(depths[i], depths[j]));
}

WellPair CascadeSpec::active_pair(int i) const {
  if (i < 0 || i > 3) throw DomainError("pair index must be in [0, 3]");
  if (i == 3 && !has_closing_distance()) {
    throw DomainError("no closing distance configured for the well 4 - well 1 pair");
  }
  return pair(i, (i + 1) % kWells, distances.at(i));
}

void CascadeSpec::validate() const {
  if (distances.size() != 3 && distances.size() != 4) {
    throw DomainError("cascade needs 3 inter-well distances (plus an optional closing one)");
  }
  for (int i = 0; i < kWells; ++i) {
    if (!std::isfinite(widths[i]) || widths[i] <= 0.0) {
      throw DomainError("cascade well widths must be positive");
    }
    if (!std::isfinite(depths[i]) || depths[i] <= 0.0) {
      throw DomainError("cascade well depths must be positive");
    }
  }
  if (std::any_of(depths.begin() + 1, depths.end(), [&](double d) { return d >= depths[0]; })) {
    throw DomainError("the first well must be strictly the deepest");
  }
  for (int i = 0; i < static_cast<int>(distances.size()); ++i) active_pair(i);
}

std::size_t PotentialProfile::segment_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                                  breakpoints.begin());
}

double PotentialProfile::at(double x) const { return segment_values[segment_index(x)]; }

double PotentialProfile::average(double x0, double x1) const {
  if (x1 <= x0) return at(x0);
  double sum = 0.0;
  double left = x0;
  for (std::size_t s = segment_index(x0); s < segment_values.size() && left < x1; ++s) {
    const double right = s < breakpoints.size() ? std::min(breakpoints[s], x1) : x1;
    if (right > left) sum += segment_values[s] * (right - left);
    left = std::max(left, right);
  }
  return sum / (x1 - x0);
}

double PotentialProfile::min_value() const {
  return *std::min_element(segment_values.begin(), segment_values.end());
}

double PotentialProfile::max_value() const {
  return *std::max_element(segment_values.begin(), segment_values.end());
}

double PotentialProfile::excess_area() const {
  const double vmin = min_value();
  double area = 0.0;
  for (std::size_t s = 0; s < segment_values.size(); ++s) {
    const double lo = s == 0 ? x_min : breakpoints[s - 1];
    const double hi = s < breakpoints.size() ? breakpoints[s] : x_max;
    area += (segment_values[s] - vmin) * (hi - lo);
  }
  return area;
}

void PotentialProfile::validate() const {
  if (segment_values.size() != breakpoints.size() + 1) {
    throw DomainError("profile needs exactly one more segment than breakpoints");
  }
  if (!(x_max > x_min)) throw DomainError("profile domain is empty");
  double prev = x_min;
  for (double b : breakpoints) {
    if (!(b > prev)) throw DomainError("profile breakpoints must be strictly increasing");
    prev = b;
  }
  if (!(x_max > prev)) throw DomainError("last breakpoint must lie inside the domain");
}

PotentialProfile pair_profile(const WellPair& pair) {
  pair.validate();
  PotentialProfile p;
  p.x_min = 0.0;
  p.x_max = pair.right_wall();
  p.breakpoints = {pair.width, pair.distance};
  p.segment_values = {pair.shallow_floor(), pair.v_deep, 0.0};
  return p;
}

PotentialProfile cascade_profile(const CascadeSpec& spec) {
  spec.validate();
  const double top = spec.max_depth();
  PotentialProfile p;
  p.x_min = 0.0;
  double centre = spec.widths[0] / 2.0;
  for (int i = 0; i < CascadeSpec::kWells; ++i) {
    if (i > 0) centre += spec.distances[i - 1];
    const double left = centre - spec.widths[i] / 2.0;
    const double right = centre + spec.widths[i] / 2.0;
    if (i > 0) {
      p.breakpoints.push_back(left);
      p.segment_values.push_back(spec.floor(i));
    } else {
      p.segment_values.push_back(spec.floor(0));
    }
    if (i + 1 < CascadeSpec::kWells) {
      p.breakpoints.push_back(right);
      p.segment_values.push_back(top);
    } else {
      p.x_max = right;
    }
  }
  p.validate();
  return p;
}

void write_profile_csv(std::ostream& os, const PotentialProfile& profile) {
  os << "x_A,V_eV\n";
  os.precision(10);
  os << profile.x_min << ',' << profile.segment_values.front() << '\n';
  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    os << profile.breakpoints[i] << ',' << profile.segment_values[i] << '\n';
    os << profile.breakpoints[i] << ',' << profile.segment_values[i + 1] << '\n';
  }
  os << profile.x_max << ',' << profile.segment_values.back() << '\n';
}

}  // namespace wellcascade
