#include "wellcascade/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kDistanceStep = 0.01;  // A
constexpr double kDepthStep = 0.0005;   // eV
constexpr double kTargetMargin = 0.1;   // eV around the targets when calibrating

struct Refined {
  double energy;
  double lo;
  double hi;
  double residual;
};

// Bisection on a verified sign change of the secular function, carried to
// machine precision; the final bracket is therefore always below refine_tol.
Refined bisect_secular(const WellPair& pair, double lo, double hi, double f_lo,
                       const PhysicalConstants& c) {
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = secular(pair, mid, c);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double e = 0.5 * (lo + hi);
  return {e, lo, hi, std::abs(secular(pair, e, c))};
}

// Bisection on the zero count: smallest E in (lo, hi] with count_below(E) > n.
Refined bisect_count(const WellPair& pair, double lo, double hi, int n,
                     const PhysicalConstants& c) {
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(pair, mid, c) > n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Finish on the secular function when the isolated root shows a sign change.
  const double f_lo = secular(pair, lo, c);
  const double f_hi = secular(pair, hi, c);
  if (std::signbit(f_lo) != std::signbit(f_hi)) return bisect_secular(pair, lo, hi, f_lo, c);
  const double e = 0.5 * (lo + hi);
  return {e, lo, hi, std::abs(secular(pair, e, c))};
}

class LevelFinder {
 public:
  LevelFinder(const WellPair& pair, const SolverConfig& cfg, const PhysicalConstants& c)
      : pair_(pair), cfg_(cfg), c_(c) {}

  SolveResult run(double lo, double hi) {
    const auto cells = static_cast<long>(std::ceil((hi - lo) / cfg_.grid_step));
    grid_.resize(static_cast<std::size_t>(cells + 1));
    for (long j = 0; j <= cells; ++j) {
      grid_[static_cast<std::size_t>(j)] =
          j == cells ? hi : lo + static_cast<double>(j) * cfg_.grid_step;
    }
    std::vector<double> values(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) values[j] = secular(pair_, grid_[j], c_);
    result_.diagnostics.grid_points = static_cast<long>(grid_.size());

    roots_.assign(grid_.size() - 1, {});
    for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
      const double fa = values[j];
      const double fb = values[j + 1];
      if (fa == 0.0) {
        roots_[j].push_back({grid_[j], grid_[j], grid_[j], 0.0});
        continue;
      }
      if (fb == 0.0 || std::signbit(fa) == std::signbit(fb)) continue;
      ++result_.diagnostics.sign_changes;
      const Refined r = bisect_secular(pair_, grid_[j], grid_[j + 1], fa, c_);
      if (r.residual > cfg_.residual_tol) {
        result_.diagnostics.rejected.push_back(r.energy);
        continue;
      }
      roots_[j].push_back(r);
    }

    const int n_lo = count_at(0);
    const int n_hi = count_at(grid_.size() - 1);
    result_.diagnostics.expected_count = n_hi - n_lo;
    verify(0, grid_.size() - 1);

    std::vector<Refined> all;
    for (const auto& cell : roots_) all.insert(all.end(), cell.begin(), cell.end());
    std::sort(all.begin(), all.end(),
              [](const Refined& x, const Refined& y) { return x.energy < y.energy; });
    // A root sitting on a grid point may be attributed to both neighbouring
    // cells; drop such duplicates when the total exceeds the expected count.
    while (static_cast<int>(all.size()) > result_.diagnostics.expected_count) {
      auto closest = all.end();
      double gap = std::numeric_limits<double>::infinity();
      for (auto it = all.begin(); it + 1 != all.end(); ++it) {
        const double g = (it + 1)->energy - it->energy;
        if (g < gap) {
          gap = g;
          closest = it + 1;
        }
      }
      if (closest == all.end() || gap > 10.0 * cfg_.refine_tol) break;
      all.erase(closest);
    }

    int index = n_lo;
    for (const Refined& r : all) {
      if (cfg_.max_levels && static_cast<int>(result_.levels.size()) >= *cfg_.max_levels) break;
      result_.levels.push_back(
          {r.energy, classify_regime(pair_, r.energy), r.residual, r.lo, r.hi, index++});
    }
    return std::move(result_);
  }

 private:
  int count_at(std::size_t j) {
    auto it = counts_.find(j);
    if (it != counts_.end()) return it->second;
    const int n = count_below(pair_, grid_[j], c_);
    counts_.emplace(j, n);
    return n;
  }

  int found_in(std::size_t a, std::size_t b) const {
    int n = 0;
    for (std::size_t j = a; j < b; ++j) n += static_cast<int>(roots_[j].size());
    return n;
  }

  void verify(std::size_t a, std::size_t b) {
    const int expected = count_at(b) - count_at(a);
    if (expected <= found_in(a, b)) return;
    if (b - a == 1) {
      resolve_cell(a, expected);
      return;
    }
    const std::size_t m = a + (b - a) / 2;
    verify(a, m);
    verify(m, b);
  }

  // Replaces the roots of one grid cell by the `expected` roots located with
  // the zero count.
  void resolve_cell(std::size_t j, int expected) {
    std::vector<Refined> previous = std::move(roots_[j]);
    roots_[j].clear();
    const int n0 = count_at(j);
    for (int n = n0; n < n0 + expected; ++n) {
      Refined r = bisect_count(pair_, grid_[j], grid_[j + 1], n, c_);
      const bool known = std::any_of(previous.begin(), previous.end(), [&](const Refined& p) {
        return std::abs(p.energy - r.energy) <= 10.0 * cfg_.refine_tol;
      });
      if (!known) result_.diagnostics.recovered.push_back(r.energy);
      roots_[j].push_back(r);
    }
  }

  const WellPair& pair_;
  const SolverConfig& cfg_;
  const PhysicalConstants& c_;
  std::vector<double> grid_;
  std::vector<std::vector<Refined>> roots_;
  std::map<std::size_t, int> counts_;
  SolveResult result_;
};

double golden_section(const auto& objective, double lo, double hi, int iterations,
                      int& evaluations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  evaluations += 2;
  for (int i = 0; i < iterations; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
    ++evaluations;
  }
  return f1 <= f2 ? x1 : x2;
}

struct Candidate {
  double x;
  double misfit;
};

// Grid search over [lo, hi] then golden-section refinement inside the
// neighbouring grid cells; the refined point only replaces the grid optimum
// when it is strictly better.
Candidate search_1d(const auto& misfit_at, Interval range, double step, int& evaluations) {
  Candidate best{range.lo, misfit_at(range.lo)};
  ++evaluations;
  if (range.hi == range.lo) return best;
  const auto n = static_cast<long>(std::ceil((range.hi - range.lo) / step - 1e-9));
  for (long k = 1; k <= n; ++k) {
    const double x = range.lo + (range.hi - range.lo) * static_cast<double>(k) /
                                    static_cast<double>(n);
    const double m = misfit_at(x);
    ++evaluations;
    if (m < best.misfit) best = {x, m};
  }
  if (!std::isfinite(best.misfit)) return best;
  const double h = (range.hi - range.lo) / static_cast<double>(n);
  const double lo = std::max(range.lo, best.x - h);
  const double hi = std::min(range.hi, best.x + h);
  const double x = golden_section(misfit_at, lo, hi, 40, evaluations);
  const double m = misfit_at(x);
  ++evaluations;
  if (m < best.misfit) best = {x, m};
  return best;
}

std::vector<double> checked_targets(const std::vector<double>& targets) {
  if (targets.empty()) throw DomainError("calibration needs at least one target energy");
  for (double t : targets) {
    if (!std::isfinite(t)) throw DomainError("calibration targets must be finite");
  }
  std::vector<double> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

// Levels of `pair` near the targets, returned in the targets' frame
// (local energy + offset).
std::vector<double> levels_near(const WellPair& pair, const std::vector<double>& sorted_targets,
                                double offset, const SolverConfig& cfg,
                                const PhysicalConstants& c) {
  const double lo = std::max(0.0, sorted_targets.front() - offset - kTargetMargin);
  const double hi = std::min(pair.v_deep, sorted_targets.back() - offset + kTargetMargin);
  if (!(hi > lo)) return {};
  const SolveResult r = find_levels(pair, cfg, {lo, hi}, c);
  std::vector<double> out;
  out.reserve(r.levels.size());
  for (const Level& l : r.levels) out.push_back(l.energy + offset);
  return out;
}

CalibrationResult finish(const Candidate& best, const WellPair& pair,
                         const std::vector<double>& targets, double offset,
                         const CalibrationOptions& opts, const PhysicalConstants& c,
                         int evaluations) {
  CalibrationResult out{best.x, best.misfit, {}, evaluations};
  match_targets(levels_near(pair, targets, offset, opts.solver, c), targets, &out.matched_levels);
  if (!(best.misfit <= opts.misfit_threshold)) {
    throw CalibrationError(best.x, best.misfit, opts.misfit_threshold);
  }
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(refine_tol > 0.0)) throw DomainError("solver refine_tol must be positive");
  if (!(grid_step > refine_tol)) throw DomainError("solver grid_step must exceed refine_tol");
  if (!(residual_tol > 0.0)) throw DomainError("solver residual_tol must be positive");
  if (max_levels && *max_levels < 0) throw DomainError("solver max_levels must be non-negative");
}

SolveResult find_levels(const WellPair& pair, const SolverConfig& cfg, const EnergyWindow& window,
                        const PhysicalConstants& c) {
  pair.validate();
  cfg.validate();
  // Stay strictly inside (0, v_deep), where the wavenumbers are defined.
  const double eps = 1e-12 * pair.v_deep;
  if (window.hi != 0.0 && !(window.hi > window.lo)) {
    throw DomainError("find_levels: empty energy window");
  }
  const double lo = std::max(window.lo, eps);
  const double hi = window.hi > 0.0 ? std::min(window.hi, pair.v_deep - eps) : pair.v_deep - eps;
  if (!(hi > lo)) return {};
  return LevelFinder(pair, cfg, c).run(lo, hi);
}

int count_levels(const WellPair& pair, const SolverConfig& cfg, const PhysicalConstants& c) {
  return static_cast<int>(find_levels(pair, cfg, {}, c).levels.size());
}

double match_targets(const std::vector<double>& levels, std::vector<double> targets,
                     std::vector<double>* matched) {
  std::sort(targets.begin(), targets.end());
  const std::size_t k = targets.size();
  if (k == 0 || levels.size() < k) {
    if (matched) matched->clear();
    return std::numeric_limits<double>::infinity();
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_start = 0;
  for (std::size_t s = 0; s + k <= levels.size(); ++s) {
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) cost += std::pow(levels[s + i] - targets[i], 2);
    if (cost < best) {
      best = cost;
      best_start = s;
    }
  }
  if (matched) {
    matched->assign(levels.begin() + static_cast<long>(best_start),
                    levels.begin() + static_cast<long>(best_start + k));
  }
  return std::sqrt(best / static_cast<double>(k));
}

CalibrationResult calibrate_distance(const WellPair& pair_template,
                                     const std::vector<double>& targets, Interval range,
                                     const CalibrationOptions& opts, const PhysicalConstants& c) {
  const std::vector<double> sorted = checked_targets(targets);
  if (!(range.hi >= range.lo) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw DomainError("calibrate_distance: empty distance range");
  }
  if (!(range.lo > pair_template.width)) {
    throw DomainError("calibrate_distance: distance range must lie above the well width");
  }
  opts.solver.validate();
  const double step = opts.grid_step > 0.0 ? opts.grid_step : kDistanceStep;
  auto misfit_at = [&](double L) {
    WellPair p = pair_template;
    p.distance = L;
    return match_targets(levels_near(p, sorted, 0.0, opts.solver, c), sorted);
  };
  int evaluations = 0;
  const Candidate best = search_1d(misfit_at, range, step, evaluations);
  WellPair p = pair_template;
  p.distance = best.x;
  return finish(best, p, sorted, 0.0, opts, c, evaluations);
}

CalibrationResult calibrate_depth(const WellPair& pair_template, DepthRole fixed_role,
                                  const std::vector<double>& targets, Interval range,
                                  std::optional<double> barrier_top,
                                  const CalibrationOptions& opts, const PhysicalConstants& c) {
  const std::vector<double> sorted = checked_targets(targets);
  if (!(range.hi >= range.lo) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw DomainError("calibrate_depth: empty depth range");
  }
  if (fixed_role == DepthRole::Shallow && !(range.lo > pair_template.v_shallow)) {
    throw DomainError("calibrate_depth: searched deep-well depth must exceed the fixed shallow one");
  }
  if (fixed_role == DepthRole::Deep && !(range.lo > 0.0 && range.hi < pair_template.v_deep)) {
    throw DomainError("calibrate_depth: searched shallow depth must lie in (0, v_deep)");
  }
  opts.solver.validate();
  const double step = opts.grid_step > 0.0 ? opts.grid_step : kDepthStep;
  auto with_depth = [&](double d) {
    WellPair p = pair_template;
    (fixed_role == DepthRole::Shallow ? p.v_deep : p.v_shallow) = d;
    p.validate();
    return p;
  };
  auto offset_for = [&](const WellPair& p) { return barrier_top ? *barrier_top - p.v_deep : 0.0; };
  auto misfit_at = [&](double d) {
    const WellPair p = with_depth(d);
    return match_targets(levels_near(p, sorted, offset_for(p), opts.solver, c), sorted);
  };
  int evaluations = 0;
  const Candidate best = search_1d(misfit_at, range, step, evaluations);
  const WellPair p = with_depth(best.x);
  return finish(best, p, sorted, offset_for(p), opts, c, evaluations);
}

}  // namespace wellcascade
