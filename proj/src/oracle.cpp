#include "wellcascade/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace {

// Symmetric tridiagonal matrix with constant off-diagonal -t.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> x;
  double t = 0.0;

  // Number of eigenvalues strictly below lambda (Sturm sequence / LDL^T inertia).
  int count_below(double lambda) const {
    const double t2 = t * t;
    const double tiny = std::numeric_limits<double>::min() * 1e3;
    int n = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      q = diag[i] - lambda - (i == 0 ? 0.0 : t2 / q);
      if (q == 0.0) q = -tiny;
      if (q < 0.0) ++n;
    }
    return n;
  }

  double lower_bound() const { return *std::min_element(diag.begin(), diag.end()) - 2.0 * t; }
  double upper_bound() const { return *std::max_element(diag.begin(), diag.end()) + 2.0 * t; }

  // k-th eigenvalue (0-based) by bisection.
  double eigenvalue(int k) const {
    double lo = lower_bound();
    double hi = upper_bound();
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
};

Tridiagonal assemble(const PotentialProfile& profile, int grid_points, double padding,
                     const PhysicalConstants& c) {
  profile.validate();
  const double x0 = profile.x_min - padding;
  const double x1 = profile.x_max + padding;
  const double h = (x1 - x0) / static_cast<double>(grid_points - 1);
  const double top = profile.max_value();
  Tridiagonal m;
  m.t = kinetic_prefactor(c) / (h * h);
  const auto interior = static_cast<std::size_t>(grid_points - 2);
  m.diag.resize(interior);
  m.x.resize(interior);
  for (std::size_t i = 0; i < interior; ++i) {
    const double xi = x0 + static_cast<double>(i + 1) * h;
    // Cell average keeps the discretisation second order across the steps.
    const double lo = xi - 0.5 * h;
    const double hi = xi + 0.5 * h;
    double v = 0.0;
    if (hi <= profile.x_min || lo >= profile.x_max) {
      v = top;
    } else {
      const double in_lo = std::max(lo, profile.x_min);
      const double in_hi = std::min(hi, profile.x_max);
      v = profile.average(in_lo, in_hi) * (in_hi - in_lo) + top * (h - (in_hi - in_lo));
      v /= h;
    }
    m.diag[i] = 2.0 * m.t + v;
    m.x[i] = xi;
  }
  return m;
}

std::vector<double> bound_levels(const Tridiagonal& m, int n_levels, double top, bool& truncated) {
  const int bound = m.count_below(top);
  const int n = std::min(n_levels, bound);
  truncated = n < n_levels;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = m.eigenvalue(k);
  return out;
}

int refined_points(int grid_points) { return 2 * grid_points - 1; }

// Solves (T - shift) y = b by LU factorisation with partial pivoting (the
// dgttrf/dgtts2 scheme).
std::vector<double> solve_shifted(const Tridiagonal& m, double shift, std::vector<double> b) {
  const std::size_t n = m.diag.size();
  std::vector<double> d(n), du(n, -m.t), dl(n, -m.t), du2(n, 0.0);
  std::vector<bool> swapped(n, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = m.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      const double f = d[i] != 0.0 ? dl[i] / d[i] : 0.0;
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  for (double& x : d) {
    if (x == 0.0) x = 1e-300;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      b[i + 1] -= dl[i] * b[i];
    } else {
      const double tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl[i] * b[i];
    }
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
  }
  return b;
}

}  // namespace

void FdConfig::validate() const {
  if (grid_points < 1001 || grid_points % 2 == 0) {
    throw DomainError("oracle grid_points must be odd and at least 1001");
  }
  if (!(padding >= 0.0) || !std::isfinite(padding)) {
    throw DomainError("oracle padding must be non-negative");
  }
}

FdLevels fd_levels(const PotentialProfile& profile, int n_levels, const FdConfig& cfg,
                   const PhysicalConstants& c) {
  cfg.validate();
  if (n_levels < 1) throw DomainError("fd_levels: n_levels must be at least 1");
  const double top = profile.max_value();
  FdLevels out;
  const Tridiagonal coarse = assemble(profile, cfg.grid_points, cfg.padding, c);
  out.levels = bound_levels(coarse, n_levels, top, out.truncated);
  if (!cfg.extrapolate) return out;

  const Tridiagonal fine = assemble(profile, refined_points(cfg.grid_points), cfg.padding, c);
  bool fine_truncated = false;
  const std::vector<double> fine_levels = bound_levels(fine, n_levels, top, fine_truncated);
  const std::size_t n = std::min(out.levels.size(), fine_levels.size());
  out.levels.resize(n);
  out.error_estimates.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double extrapolated = (4.0 * fine_levels[k] - out.levels[k]) / 3.0;
    out.error_estimates[k] = std::abs(extrapolated - out.levels[k]);
    out.levels[k] = extrapolated;
  }
  out.truncated = out.truncated || fine_truncated;
  return out;
}

FdSplitting fd_splitting(const PotentialProfile& profile, std::pair<int, int> level_indices,
                         const FdConfig& cfg, const PhysicalConstants& c) {
  const auto [i, j] = level_indices;
  if (i < 0 || j < 0) throw DomainError("fd_splitting: level indices must be non-negative");
  const FdLevels r = fd_levels(profile, std::max(i, j) + 1, cfg, c);
  const auto hi = static_cast<std::size_t>(std::max(i, j));
  if (r.levels.size() <= hi) {
    throw ComputationError("fd_splitting: requested level is not a resolved bound state");
  }
  const double value = r.levels[static_cast<std::size_t>(j)] - r.levels[static_cast<std::size_t>(i)];
  double err = 0.0;
  if (!r.error_estimates.empty()) {
    err = r.error_estimates[static_cast<std::size_t>(i)] +
          r.error_estimates[static_cast<std::size_t>(j)];
  }
  return {value, err};
}

FdEigenvector fd_eigenvector(const PotentialProfile& profile, int index, const FdConfig& cfg,
                             const PhysicalConstants& c) {
  cfg.validate();
  if (index < 0) throw DomainError("fd_eigenvector: index must be non-negative");
  const Tridiagonal m = assemble(profile, cfg.grid_points, cfg.padding, c);
  if (m.count_below(profile.max_value()) <= index) {
    throw ComputationError("fd_eigenvector: requested level is not a bound state");
  }
  const double e = m.eigenvalue(index);
  // Shift slightly off the eigenvalue so the factorisation stays regular.
  const double shift = e + 1e-13 * std::max(1.0, std::abs(e));
  std::vector<double> v(m.diag.size(), 1.0);
  for (int it = 0; it < 3; ++it) {
    v = solve_shifted(m, shift, std::move(v));
    double norm = 0.0;
    for (double y : v) norm = std::max(norm, std::abs(y));
    for (double& y : v) y /= norm;
  }
  const double h = m.x.size() > 1 ? m.x[1] - m.x[0] : 1.0;
  double sum = 0.0;
  for (double y : v) sum += y * y * h;
  const double scale = 1.0 / std::sqrt(sum);
  double peak = 0.0;
  for (double y : v) peak = std::max(peak, std::abs(y));
  for (double y : v) {
    if (std::abs(y) > 1e-6 * peak) {
      if (y < 0.0) {
        for (double& w : v) w = -w;
      }
      break;
    }
  }
  for (double& y : v) y *= scale;
  return {e, m.x, std::move(v)};
}

int count_nodes(const std::vector<double>& psi, double relative_floor) {
  double peak = 0.0;
  for (double y : psi) peak = std::max(peak, std::abs(y));
  const double floor = relative_floor * peak;
  int nodes = 0;
  int last = 0;
  for (double y : psi) {
    if (std::abs(y) <= floor) continue;
    const int s = y > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

}  // namespace wellcascade
