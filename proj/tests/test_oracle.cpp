#include <doctest.h>

#include <cmath>

#include "wellcascade/eigensolver.hpp"
#include "wellcascade/errors.hpp"
#include "wellcascade/oracle.hpp"

using namespace wellcascade;

namespace {

const double kDistances[3] = {60.18879575757995, 60.0, 60.0};

CascadeSpec model_spec() {
  CascadeSpec s;
  s.widths.fill(43.85);
  s.depths = {1.585, 0.272, 0.524, 0.95};
  s.distances = {kDistances[0], kDistances[1], kDistances[2]};
  return s;
}

// Flat well between thin walls high enough to stand in for infinite ones.
PotentialProfile box(double width) {
  PotentialProfile p;
  p.breakpoints = {2.0, 2.0 + width};
  p.segment_values = {1e4, 0.0, 1e4};
  p.x_min = 0.0;
  p.x_max = width + 4.0;
  return p;
}

// Equal-depth wells of width a separated by `barrier`, walls at the outer edges.
PotentialProfile symmetric_double(double a, double barrier, double depth) {
  PotentialProfile p;
  p.breakpoints = {a, a + barrier};
  p.segment_values = {0.0, depth, 0.0};
  p.x_min = 0.0;
  p.x_max = 2 * a + barrier;
  return p;
}

// Indices of the two levels nearest the given energies.
std::pair<int, int> doublet_indices(const WellPair& pair, double lo, double hi) {
  const SolveResult r = find_levels(pair, {}, {lo, hi});
  REQUIRE(r.levels.size() == 2);
  return {r.levels[0].index, r.levels[1].index};
}

}  // namespace

TEST_CASE("infinite-well limit") {
  const double a = 43.85;
  const double exact = kinetic_prefactor() * M_PI * M_PI / (a * a);
  CHECK(exact == doctest::Approx(0.01956).epsilon(1e-3));
  const FdLevels fd = fd_levels(box(a), 3);
  REQUIRE(fd.levels.size() == 3);
  CHECK(fd.levels[0] == doctest::Approx(exact).epsilon(0.005));
  CHECK(fd.levels[1] == doctest::Approx(4 * exact).epsilon(0.005));
}

TEST_CASE("cascade profile has a level at the published ground state") {
  const FdLevels fd = fd_levels(cascade_profile(model_spec()), 1);
  REQUIRE(fd.levels.size() == 1);
  CHECK(std::abs(fd.levels[0] - 0.01828) < 5e-4);
}

TEST_CASE("halving the grid step moves levels by less than 1e-4 eV") {
  const PotentialProfile prof = pair_profile(make_pair(43.85, kDistances[0], 0.272, 1.585));
  FdConfig coarse;
  coarse.grid_points = 10001;
  FdConfig fine;
  fine.grid_points = 20001;
  const FdLevels a = fd_levels(prof, 10, coarse);
  const FdLevels b = fd_levels(prof, 10, fine);
  REQUIRE(a.levels.size() == 10);
  for (int i = 0; i < 10; ++i) {
    const double d1 = std::abs(a.levels[i] - b.levels[i]);
    CHECK(d1 < 1e-4);
  }
}

TEST_CASE("eigenvalues are ascending and bound") {
  const PotentialProfile prof = pair_profile(make_pair(30.0, 40.0, 0.3, 0.8));
  const FdLevels fd = fd_levels(prof, 1000);
  CHECK(fd.truncated);
  for (std::size_t i = 0; i < fd.levels.size(); ++i) {
    CHECK(fd.levels[i] < prof.max_value());
    if (i) CHECK(fd.levels[i] > fd.levels[i - 1]);
  }
}

TEST_CASE("pair-1 splitting") {
  const WellPair p = make_pair(43.85, kDistances[0], 0.272, 1.585);
  const auto idx = doublet_indices(p, 1.43, 1.47);
  const FdSplitting s = fd_splitting(pair_profile(p), idx);
  CHECK(s.value == doctest::Approx(0.015).epsilon(0.3));
  CHECK(s.error_estimate == 0.0);
}

TEST_CASE("extrapolated and plain splittings agree within the error estimate") {
  const WellPair p = make_pair(43.85, kDistances[0], 0.272, 1.585);
  const auto idx = doublet_indices(p, 1.43, 1.47);
  FdConfig rich;
  rich.extrapolate = true;
  const FdSplitting plain = fd_splitting(pair_profile(p), idx);
  const FdSplitting ex = fd_splitting(pair_profile(p), idx, rich);
  CHECK(ex.error_estimate > 0.0);
  CHECK(std::abs(ex.value - plain.value) <= ex.error_estimate * (1 + 1e-9) + 1e-15);
}

TEST_CASE("model pairs: levels within 5e-3 eV, splittings within 30% (10% extrapolated)") {
  const CascadeSpec s = model_spec();
  const double windows[3][2] = {{1.43, 1.47}, {0.26, 0.28}, {0.44, 0.45}};
  FdConfig rich;
  rich.extrapolate = true;
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    const WellPair p = s.active_pair(i);
    const SolveResult r = find_levels(p);
    const FdLevels fd = fd_levels(pair_profile(p), static_cast<int>(r.levels.size()) + 3);
    REQUIRE(fd.levels.size() == r.levels.size());
    for (std::size_t k = 0; k < fd.levels.size(); ++k) {
      CHECK(std::abs(fd.levels[k] - r.levels[k].energy) < 5e-3);
    }
    const auto idx = doublet_indices(p, windows[i][0], windows[i][1]);
    const double exact = r.levels[idx.second].energy - r.levels[idx.first].energy;
    const double plain = fd_splitting(pair_profile(p), idx).value;
    const double ex = fd_splitting(pair_profile(p), idx, rich).value;
    CHECK(std::abs(plain / exact - 1.0) < 0.30);
    CHECK(std::abs(ex / exact - 1.0) < 0.10);
  }
}

TEST_CASE("symmetric double well: positive splitting that closes with barrier width") {
  double previous = 1e9;
  for (double barrier : {4.0, 8.0, 12.0, 16.0}) {
    const FdSplitting s = fd_splitting(symmetric_double(20.0, barrier, 0.5), {0, 1});
    CHECK(s.value > 0.0);
    CHECK(s.value < previous);
    previous = s.value;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("eigenvector node count equals the level index") {
  const PotentialProfile prof = pair_profile(make_pair(43.85, kDistances[0], 0.272, 1.585));
  for (int n = 0; n < 5; ++n) {
    const FdEigenvector v = fd_eigenvector(prof, n);
    CHECK(count_nodes(v.psi) == n);
    double norm = 0.0;
    for (double y : v.psi) norm += y * y;
    norm *= v.x[1] - v.x[0];
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.x.size() == v.psi.size());
  }
}

TEST_CASE("unresolved or invalid requests") {
  const PotentialProfile prof = pair_profile(make_pair(10.0, 14.0, 0.1, 0.2));
  const int n = static_cast<int>(fd_levels(prof, 100).levels.size());
  CHECK_THROWS(fd_splitting(prof, {0, n + 2}));
  CHECK_THROWS(fd_eigenvector(prof, n + 2));
  CHECK_THROWS_AS(fd_levels(prof, 0), DomainError);
  FdConfig cfg;
  cfg.grid_points = 1000;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.grid_points = 2002;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.grid_points = 1001;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("count_nodes ignores numerical noise") {
  CHECK(count_nodes({1.0, 0.5, -0.5, -1.0, 0.5}) == 2);
  CHECK(count_nodes({1.0, 1e-20, -1e-20, 1.0}) == 0);
  CHECK(count_nodes({}) == 0);
}
