#include "wellcascade/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace {

constexpr int kSimpsonIntervals = 4000;  // per region
constexpr int kPeakSamples = 4000;       // per region

enum class Region { Shallow, Barrier, Deep, Outside };

Region region_of(const PiecewiseWavefunction& wf, double x) {
  const auto& r = wf.region_bounds;
  if (x < r[0] || x > r[3]) return Region::Outside;
  if (x <= r[1]) return Region::Shallow;
  if (x <= r[2]) return Region::Barrier;
  return Region::Deep;
}

// Value and derivative using the closed form of one region, even outside it.
std::pair<double, double> evaluate_in(const PiecewiseWavefunction& wf, Region region, double x) {
  switch (region) {
    case Region::Shallow:
      if (wf.regime == Regime::A) {
        const double ep = std::exp(wf.k1 * x);
        const double em = std::exp(-wf.k1 * x);
        return {wf.a1 * ep + wf.a2 * em, wf.k1 * (wf.a1 * ep - wf.a2 * em)};
      } else {
        const double s = std::sin(wf.k1 * x);
        const double co = std::cos(wf.k1 * x);
        return {wf.a1 * s + wf.a2 * co, wf.k1 * (wf.a1 * co - wf.a2 * s)};
      }
    case Region::Barrier: {
      const double u = x - wf.region_bounds[1];
      const double ep = std::exp(wf.beta * u);
      const double em = std::exp(-wf.beta * u);
      return {wf.b * ep + wf.c * em, wf.beta * (wf.b * ep - wf.c * em)};
    }
    case Region::Deep: {
      const double v = x - wf.region_bounds[2];
      const double s = std::sin(wf.k2 * v);
      const double co = std::cos(wf.k2 * v);
      return {wf.d1 * s + wf.d2 * co, wf.k2 * (wf.d1 * co - wf.d2 * s)};
    }
    case Region::Outside:
      break;
  }
  return {0.0, 0.0};
}

double simpson(const PiecewiseWavefunction& wf, double x0, double x1, int intervals) {
  if (!(x1 > x0)) return 0.0;
  const double h = (x1 - x0) / intervals;
  double sum = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double x = x0 + i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double y = wf.value(x);
    sum += w * y * y;
  }
  return sum * h / 3.0;
}

double sampled_peak(const PiecewiseWavefunction& wf) {
  double peak = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double x0 = wf.region_bounds[r];
    const double x1 = wf.region_bounds[r + 1];
    for (int i = 0; i <= kPeakSamples; ++i) {
      peak = std::max(peak, std::abs(wf.value(x0 + (x1 - x0) * i / kPeakSamples)));
    }
  }
  return peak;
}

// Integers n with lo < n pi < hi.
int multiples_of_pi_between(double lo, double hi) {
  const double pi = std::numbers::pi;
  return std::max(0, static_cast<int>(std::ceil(hi / pi) - 1.0 - std::floor(lo / pi)));
}

}  // namespace

double PiecewiseWavefunction::value(double x) const {
  return evaluate_in(*this, region_of(*this, x), x).first;
}

double PiecewiseWavefunction::derivative(double x) const {
  return evaluate_in(*this, region_of(*this, x), x).second;
}

int PiecewiseWavefunction::node_count() const {
  const double a = region_bounds[1] - region_bounds[0];
  int nodes = 0;
  if (regime == Regime::B) nodes += multiples_of_pi_between(0.0, k1 * a);
  const double psi_a = evaluate_in(*this, Region::Shallow, region_bounds[1]).first;
  const double psi_l = evaluate_in(*this, Region::Barrier, region_bounds[2]).first;
  if (psi_a == 0.0) ++nodes;
  if (psi_a != 0.0 && psi_l != 0.0 && std::signbit(psi_a) != std::signbit(psi_l)) ++nodes;
  if (psi_l == 0.0) ++nodes;
  // Deep well: psi = R sin(k2 v + phase). The phase at the right wall is a
  // multiple of pi up to rounding; that wall zero is not a node.
  const double phase = std::atan2(d2, d1);
  const double wall = std::round((phase + k2 * a) / std::numbers::pi);
  nodes += multiples_of_pi_between(phase, (wall - 0.5) * std::numbers::pi);
  return nodes;
}

double PiecewiseWavefunction::matching_residual() const {
  const double slope_scale = std::max({k1, beta, k2}) * peak;
  double worst = 0.0;
  const std::pair<Region, Region> joins[] = {{Region::Shallow, Region::Barrier},
                                             {Region::Barrier, Region::Deep}};
  for (int j = 0; j < 2; ++j) {
    const double x = region_bounds[j + 1];
    const auto left = evaluate_in(*this, joins[j].first, x);
    const auto right = evaluate_in(*this, joins[j].second, x);
    worst = std::max(worst, std::abs(left.first - right.first) / peak);
    worst = std::max(worst, std::abs(left.second - right.second) / slope_scale);
  }
  return worst;
}

PiecewiseWavefunction build_wavefunction(const WellPair& pair, const Level& level,
                                         double wall_tolerance, const PhysicalConstants& c) {
  pair.validate();
  const WavenumberSet w = wavenumbers(pair, level.energy, c);
  PiecewiseWavefunction wf{};
  wf.regime = w.regime;
  wf.energy = level.energy;
  wf.k1 = w.k1;
  wf.beta = w.beta;
  wf.k2 = w.k2;
  wf.region_bounds = {0.0, pair.width, pair.distance, pair.right_wall()};

  // Shallow well, psi(0) = 0 with psi'(0) > 0.
  if (w.regime == Regime::A) {
    wf.a1 = 0.5;
    wf.a2 = -0.5;
  } else {
    wf.a1 = 1.0;
    wf.a2 = 0.0;
  }
  // Left to right: match psi and psi' at x = a, then at x = L.
  const auto [psi_a, dpsi_a] = evaluate_in(wf, Region::Shallow, pair.width);
  wf.b = 0.5 * (psi_a + dpsi_a / w.beta);
  wf.c = 0.5 * (psi_a - dpsi_a / w.beta);
  const auto [psi_l, dpsi_l] = evaluate_in(wf, Region::Barrier, pair.distance);
  wf.d2 = psi_l;
  wf.d1 = dpsi_l / w.k2;

  wf.peak = sampled_peak(wf);
  const double right = evaluate_in(wf, Region::Deep, pair.right_wall()).first;
  wf.wall_residual = std::abs(right) / wf.peak;
  if (!(wf.wall_residual <= wall_tolerance)) {
    throw ComputationError("build_wavefunction: energy " + std::to_string(level.energy) +
                           " eV does not satisfy the right-wall condition (residual " +
                           std::to_string(wf.wall_residual) + ")");
  }

  double norm2 = 0.0;
  for (int r = 0; r < 3; ++r) {
    norm2 += simpson(wf, wf.region_bounds[r], wf.region_bounds[r + 1], kSimpsonIntervals);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (double* coef : {&wf.a1, &wf.a2, &wf.b, &wf.c, &wf.d1, &wf.d2}) *coef *= scale;
  wf.peak *= scale;
  wf.normalized = true;
  return wf;
}

std::vector<std::pair<double, double>> sample_wavefunction(const PiecewiseWavefunction& wf,
                                                           int n_points) {
  if (n_points < 2) throw DomainError("sample_wavefunction: need at least two points");
  const double x0 = wf.region_bounds[0];
  const double x1 = wf.region_bounds[3];
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double x = i + 1 == n_points ? x1 : x0 + (x1 - x0) * i / (n_points - 1);
    out.emplace_back(x, wf.value(x));
  }
  return out;
}

double probability_between(const PiecewiseWavefunction& wf, double x0, double x1) {
  double total = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double lo = std::max(x0, wf.region_bounds[r]);
    const double hi = std::min(x1, wf.region_bounds[r + 1]);
    total += simpson(wf, lo, hi, kSimpsonIntervals);
  }
  return total;
}

void write_wavefunction_csv(std::ostream& os,
                            const std::vector<std::pair<double, double>>& samples) {
  os << "x_A,psi\n";
  const auto old = os.precision(12);
  for (const auto& [x, psi] : samples) os << x << ',' << psi << '\n';
  os.precision(old);
}

}  // namespace wellcascade
