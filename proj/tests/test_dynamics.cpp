#include <doctest.h>

#include <cmath>
#include <random>

#include "wellcascade/dynamics.hpp"
#include "wellcascade/errors.hpp"
#include "wellcascade/quantities.hpp"

using namespace wellcascade;

namespace {

const double kHbar = codata2018().hbar_eV_s;

}  // namespace

TEST_CASE("Rabi probability special points") {
  const ResonantPair p = make_resonant_pair(1.460, 1.445);
  CHECK(p.resonant_mode());
  CHECK(rabi_probability(0.0, p) == 0.0);
  CHECK(rabi_probability(M_PI * kHbar / p.splitting(), p) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(rabi_probability(-1e-15, p), DomainError);

  ResonantPair q = p;
  q.e1 = 1.45;
  q.e2 = 1.45;
  q.w12 = 0.0075;
  CHECK_FALSE(q.resonant_mode());
  CHECK(rabi_amplitude(q) == 1.0);
  q.e2 = 1.46;
  CHECK(rabi_amplitude(q) == doctest::Approx(4 * 0.0075 * 0.0075 / (0.01 * 0.01 + 4 * 0.0075 * 0.0075)));
}

TEST_CASE("tunneling times from the published splittings") {
  CHECK(tunneling_time(make_resonant_pair(1.460, 1.445)) / kPicosecond ==
        doctest::Approx(0.138).epsilon(0.01));
  CHECK(tunneling_time(make_resonant_pair(1.335, 1.329)) / kPicosecond ==
        doctest::Approx(0.345).epsilon(0.01));
  CHECK(tunneling_time(make_resonant_pair(1.0787, 1.0785)) / kPicosecond ==
        doctest::Approx(10.3).epsilon(0.01));
  const ResonantPair p = make_resonant_pair(1.460, 1.445);
  CHECK(tunneling_time(p, 1) == doctest::Approx(3 * tunneling_time(p, 0)).epsilon(1e-15));
  CHECK_THROWS_AS(tunneling_time(p, -1), DomainError);
}

TEST_CASE("resonant pairs need a positive splitting") {
  CHECK_THROWS_AS(make_resonant_pair(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_resonant_pair(1.0, 1.1), DomainError);
  ResonantPair p{1.0, 1.0};
  CHECK_THROWS_AS(tunneling_time(p), DomainError);
}

TEST_CASE("decay time") {
  CHECK(decay_time(0.131) == doctest::Approx(2.51e-15).epsilon(0.01));
  CHECK(decay_time(0.4258) == doctest::Approx(7.7e-16).epsilon(0.01));
  CHECK(decay_time(1.0) == doctest::Approx(kHbar / 2.0).epsilon(1e-15));
  double previous = INFINITY;
  for (double gap = 1e-3; gap <= 1e3; gap *= 10) {
    CHECK(decay_time(gap) < previous);
    previous = decay_time(gap);
  }
  CHECK_THROWS_AS(decay_time(0.0), DomainError);
  CHECK_THROWS_AS(decay_time(-0.1), DomainError);
}

TEST_CASE("first maximum matches the closed form") {
  const ResonantPair p = make_resonant_pair(1.459912, 1.444849);
  const double t = first_maximum_time(p);
  CHECK(t == doctest::Approx(tunneling_time(p)).epsilon(1e-6));
  const ResonantPair q = make_resonant_pair(1.444849 + 10 * p.splitting(), 1.444849);
  CHECK(first_maximum_time(q) == doctest::Approx(t / 10).epsilon(1e-6));
  const double pt = rabi_probability(t, p);
  for (int i = 0; i < 200; ++i) CHECK(rabi_probability(t * i / 200.0, p) <= pt);
}

TEST_CASE("Rabi properties over random pairs and times") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> energy(0.1, 2.0), split(1e-5, 0.1), unit(0.0, 1.0);
  std::uniform_real_distribution<double> coupling(1e-5, 0.05), detune(-0.05, 0.05);
  int out_of_range = 0;
  double worst_period = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double lo = energy(rng);
    ResonantPair p = make_resonant_pair(lo + split(rng), lo);
    if (i % 2) {
      p.e1 = lo;
      p.e2 = lo + detune(rng);
      p.w12 = coupling(rng);
    }
    const double period = 2 * M_PI * kHbar / p.splitting();
    const double t = unit(rng) * 50 * period;
    const double prob = rabi_probability(t, p);
    if (!(prob >= 0.0 && prob <= 1.0)) ++out_of_range;
    const double t0 = unit(rng) * period;
    worst_period =
        std::max(worst_period, std::abs(rabi_probability(t0 + period, p) - rabi_probability(t0, p)));
  }
  CHECK(out_of_range == 0);
  CHECK(worst_period < 1e-12);
}

TEST_CASE("tunneling time ordering") {
  const ResonantPair p = make_resonant_pair(1.46, 1.445);
  for (int k = 0; k < 5; ++k) CHECK(tunneling_time(p, k + 1) > tunneling_time(p, k));
  const ResonantPair wider = make_resonant_pair(1.47, 1.445);
  CHECK(tunneling_time(wider) < tunneling_time(p));
}

TEST_CASE("transfer step ratio") {
  TransferStep s{};
  s.tunneling_time = 0.138e-12;
  s.decay_time = 2.51e-15;
  CHECK(s.tunneling_to_decay_ratio() == doctest::Approx(55.0).epsilon(0.01));
}
