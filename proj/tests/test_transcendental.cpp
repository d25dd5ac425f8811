#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wellcascade/eigensolver.hpp"
#include "wellcascade/errors.hpp"
#include "wellcascade/transcendental.hpp"

using namespace wellcascade;

namespace {

const WellPair kPair1 = make_pair(43.85, 60.18879575757995, 0.272, 1.585);

// Table formulas re-evaluated in long double straight from the SI constants.
struct LongDoubleTable {
  long double k1, beta, k2, L, a;

  LongDoubleTable(const WellPair& p, double e) : L(p.distance), a(p.width) {
    const long double m = 9.1093837015e-31L, hbar = 1.054571817e-34L, ev = 1.602176634e-19L;
    const long double f = std::sqrt(2.0L * m * ev) / hbar * 1e-10L;
    const long double E = e;
    k1 = f * std::sqrt(std::abs(((long double)p.v_deep - p.v_shallow) - E));
    beta = f * std::sqrt((long double)p.v_deep - E);
    k2 = f * std::sqrt(E);
  }
  long double f0() const {
    const long double num =
        ((k1 - beta) * std::exp(k1 * (L - a)) + (k1 + beta) * std::exp(k1 * (L + a))) *
        std::exp(beta * (L - a));
    const long double den =
        (-k1 + beta) * std::exp(k1 * (L + a)) - (k1 + beta) * std::exp(k1 * (L - a));
    return num / den;
  }
  long double g0() const {
    const long double cot = 1.0L / std::tan(k2 * a);
    return (beta - k2 * cot) * std::exp(-beta * (L - a)) / (beta + k2 * cot);
  }
  long double f1() const {
    const long double cot = 1.0L / std::tan(k1 * a);
    return (beta + k1 * cot) * std::exp(beta * (L - a)) / (beta - k1 * cot);
  }
};

double bisect(auto fn, double lo, double hi) {
  double flo = fn(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("regime classification") {
  CHECK(classify_regime(kPair1, 1.0) == Regime::A);
  CHECK(classify_regime(kPair1, 1.445) == Regime::B);
  CHECK(classify_regime(kPair1, kPair1.shallow_floor()) == Regime::B);
  CHECK(classify_regime(kPair1, std::nextafter(kPair1.shallow_floor(), 0.0)) == Regime::A);
  CHECK_THROWS_AS(classify_regime(kPair1, 0.0), DomainError);
  CHECK_THROWS_AS(classify_regime(kPair1, 1.585), DomainError);
  CHECK_THROWS_AS(classify_regime(kPair1, -0.1), DomainError);
  CHECK(to_string(Regime::A) == "A");
  CHECK(to_string(Regime::B) == "B");
}

TEST_CASE("wavenumbers square to their definitions") {
  const double f2 = std::pow(codata2018().wavenumber_factor, 2);
  for (double e : {0.3, 1.0, 1.313, 1.445}) {
    const WavenumberSet w = wavenumbers(kPair1, e);
    CHECK(w.beta * w.beta == doctest::Approx(f2 * (1.585 - e)).epsilon(1e-13));
    CHECK(w.k2 * w.k2 == doctest::Approx(f2 * e).epsilon(1e-13));
    CHECK(std::abs(w.k1 * w.k1 - f2 * std::abs(1.313 - e)) < 1e-12);
    CHECK(w.regime == classify_regime(kPair1, e));
  }
}

TEST_CASE("unscaled f0 and g0 against an extended-precision re-evaluation") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> energy(0.01, 1.30);
  int checked = 0;
  while (checked < 20) {
    const double e = energy(rng);
    const LongDoubleTable ref(kPair1, e);
    const long double f = ref.f0(), g = ref.g0();
    CHECK(unscaled::f0(kPair1, e) == doctest::Approx(static_cast<double>(f)).epsilon(1e-10));
    CHECK(unscaled::g0(kPair1, e) == doctest::Approx(static_cast<double>(g)).epsilon(1e-10));
    ++checked;
  }
}

TEST_CASE("unscaled f1 against an extended-precision re-evaluation") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> energy(1.32, 1.58);
  for (int i = 0; i < 20; ++i) {
    const double e = energy(rng);
    const LongDoubleTable ref(kPair1, e);
    CHECK(unscaled::f1(kPair1, e) == doctest::Approx(static_cast<double>(ref.f1())).epsilon(1e-10));
    CHECK(unscaled::g1(kPair1, e) == unscaled::g0(kPair1, e));
  }
  CHECK_THROWS_AS(unscaled::f1(kPair1, 1.0), DomainError);
  CHECK_THROWS_AS(unscaled::f0(kPair1, 1.4), DomainError);
}

TEST_CASE("rescaled sides equal the unscaled ones times exp(-beta (L - a))") {
  // A narrow pair keeps the unscaled exponentials small enough to compare.
  const WellPair p = make_pair(8.0, 12.0, 0.5, 1.2);
  for (double e : {0.2, 0.45, 0.69, 0.75, 0.9, 1.1}) {
    const WavenumberSet w = wavenumbers(p, e);
    const double scale = std::exp(-w.beta * p.barrier_width());
    const double f = w.regime == Regime::A ? unscaled::f0(p, e) : unscaled::f1(p, e);
    const BranchValue l = lhs(p, e), r = rhs(p, e);
    REQUIRE_FALSE(l.pole);
    REQUIRE_FALSE(r.pole);
    CHECK(l.value == doctest::Approx(f * scale).epsilon(1e-9));
    CHECK(r.value == doctest::Approx(unscaled::g0(p, e) * scale).epsilon(1e-9));
    const BranchValue m = mismatch(p, e);
    CHECK(m.value == doctest::Approx(l.value - r.value).epsilon(1e-12));
  }
}

TEST_CASE("g1 reduces to exp(-beta (L - a)) when k2 a = pi/2") {
  const WellPair p = make_pair(20.0, 30.0, 0.5, 1.5);
  const double k2 = M_PI / 2.0 / p.width;
  const double e = std::pow(k2 / codata2018().wavenumber_factor, 2);
  const WavenumberSet w = wavenumbers(p, e);
  CHECK(unscaled::g1(p, e) ==
        doctest::Approx(std::exp(-w.beta * p.barrier_width())).epsilon(1e-10));
  // The rescaled right side carries the extra exp(-beta (L - a)).
  CHECK(rhs(p, e).value ==
        doctest::Approx(std::exp(-2.0 * w.beta * p.barrier_width())).epsilon(1e-10));
}

TEST_CASE("pole flag near a zero of the g denominator") {
  // beta + k2 cot(k2 a) = 0 somewhere in each deep-well branch; bracket one.
  const WellPair p = make_pair(20.0, 30.0, 0.5, 1.5);
  auto den = [&](double e) {
    const WavenumberSet w = wavenumbers(p, e);
    return w.beta * std::sin(w.k2 * p.width) + w.k2 * std::cos(w.k2 * p.width);
  };
  double lo = 0.05, hi = 0.0;
  for (double e = 0.05; e < 1.49; e += 1e-3) {
    if ((den(e) < 0) != (den(lo) < 0)) {
      hi = e;
      break;
    }
    lo = e;
  }
  REQUIRE(hi > 0.0);
  const double pole = bisect(den, lo, hi);
  CHECK(rhs(p, pole).pole);
  CHECK(mismatch(p, pole).pole);
  CHECK_FALSE(rhs(p, pole + 1e-4).pole);
  CHECK(std::isfinite(secular(p, pole)));
}

TEST_CASE("mismatch vanishes at the pair-1 resonances and changes sign across them") {
  const SolveResult r = find_levels(kPair1, {}, {1.40, 1.50});
  REQUIRE(r.levels.size() >= 2);
  for (const Level& l : r.levels) {
    const BranchValue at = mismatch(kPair1, l.energy);
    if (!at.pole) CHECK(std::abs(at.value) < 1e-6);
    const BranchValue below = mismatch(kPair1, l.energy - 1e-7);
    const BranchValue above = mismatch(kPair1, l.energy + 1e-7);
    if (!below.pole && !above.pole) CHECK((below.value < 0) != (above.value < 0));
  }
  bool near_1445 = false;
  for (const Level& l : r.levels) near_1445 = near_1445 || std::abs(l.energy - 1.445) < 0.005;
  CHECK(near_1445);
}

TEST_CASE("roots of the unscaled equations coincide with the rescaled ones") {
  // The resonances sit away from the g poles, so the unscaled f1 - g1 can be
  // bisected directly.
  const SolveResult r = find_levels(kPair1, {}, {1.43, 1.47});
  REQUIRE(r.levels.size() == 2);
  for (const Level& l : r.levels) {
    auto raw = [&](double e) { return unscaled::f1(kPair1, e) - unscaled::g1(kPair1, e); };
    const double lo = l.energy - 1e-6, hi = l.energy + 1e-6;
    REQUIRE((raw(lo) < 0) != (raw(hi) < 0));
    CHECK(std::abs(bisect(raw, lo, hi) - l.energy) < 1e-9);
  }
}

TEST_CASE("secular function is continuous across the regime boundary") {
  const double floor = kPair1.shallow_floor();
  const double below = secular(kPair1, floor - 1e-10);
  const double at = secular(kPair1, floor);
  const double above = secular(kPair1, floor + 1e-10);
  CHECK(std::abs(at - below) < 1e-6);
  CHECK(std::abs(above - at) < 1e-6);
}

TEST_CASE("count_below is a staircase that steps at every level") {
  const SolveResult r = find_levels(kPair1);
  REQUIRE(!r.levels.empty());
  CHECK(count_below(kPair1, 1e-6) == 0);
  CHECK(count_below(kPair1, kPair1.v_deep) == static_cast<int>(r.levels.size()));
  for (const Level& l : r.levels) {
    CHECK(count_below(kPair1, l.energy - 1e-9) == l.index);
    CHECK(count_below(kPair1, l.energy + 1e-9) == l.index + 1);
  }
}

TEST_CASE("scan rows and CSV") {
  const std::vector<ScanRow> rows = scan(kPair1, 1.40, 1.50, 1e-3, 0.0);
  CHECK(rows.size() == 101);
  CHECK(rows.front().regime == Regime::B);
  for (const ScanRow& row : rows) {
    if (row.pole) CHECK(std::isnan(row.mismatch));
    else CHECK(row.mismatch == doctest::Approx(row.lhs - row.rhs));
  }
  // Energies outside the pair are skipped; the shift moves the frame only.
  CHECK(scan(kPair1, -1.0, 0.0, 0.1).empty());
  const std::vector<ScanRow> shifted = scan(kPair1, 2.40, 2.50, 1e-3, 1.0);
  REQUIRE(shifted.size() == rows.size());
  CHECK(shifted[7].lhs == doctest::Approx(rows[7].lhs).epsilon(1e-9));
  CHECK_THROWS_AS(scan(kPair1, 1.5, 1.4, 1e-3), DomainError);
  CHECK_THROWS_AS(scan(kPair1, 1.4, 1.5, 0.0), DomainError);

  std::ostringstream os;
  write_scan_csv(os, rows);
  CHECK(os.str().rfind("E_eV,lhs,rhs,mismatch,regime,pole_flag\n", 0) == 0);
}

TEST_CASE("every root lies inside (0, v_deep)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> width(5.0, 50.0), gap(2.0, 25.0), depth(0.1, 2.0);
  for (int i = 0; i < 10; ++i) {
    double v1 = depth(rng), v2 = depth(rng);
    if (v1 == v2) continue;
    const double a = width(rng);
    const WellPair p = make_pair(a, a + gap(rng), std::min(v1, v2), std::max(v1, v2));
    for (const Level& l : find_levels(p).levels) {
      CHECK(l.energy > 0.0);
      CHECK(l.energy < p.v_deep);
    }
  }
}
