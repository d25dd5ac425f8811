#include <doctest.h>

#include <cmath>

#include "wellcascade/errors.hpp"
#include "wellcascade/quantities.hpp"

using namespace wellcascade;

TEST_CASE("CODATA 2018 base values") {
  const PhysicalConstants& c = codata2018();
  CHECK(c.hbar_J_s == 1.054571817e-34);
  CHECK(c.electron_mass_kg == 9.1093837015e-31);
  CHECK(c.eV_in_J == 1.602176634e-19);
  CHECK(c.hbar_eV_s == doctest::Approx(6.582119569e-16).epsilon(1e-10));
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("wavenumber factor against an extended-precision evaluation") {
  const long double m = 9.1093837015e-31L, hbar = 1.054571817e-34L, ev = 1.602176634e-19L;
  const long double expected = std::sqrt(2.0L * m * ev) / hbar * 1e-10L;
  CHECK(codata2018().wavenumber_factor ==
        doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
  CHECK(wavenumber(4.0) == doctest::Approx(2.0 * static_cast<double>(expected)).epsilon(1e-14));
  CHECK(wavenumber(0.0) == 0.0);
  CHECK_THROWS_AS(wavenumber(-1e-3), DomainError);
}

TEST_CASE("kinetic prefactor is hbar^2/2m in eV A^2") {
  CHECK(kinetic_prefactor() == doctest::Approx(3.80998212).epsilon(1e-8));
}

TEST_CASE("energy conversions") {
  CHECK(ev_to_joule(1.445) == doctest::Approx(2.3151e-19).epsilon(1e-4));
  CHECK(joule_to_ev(ev_to_joule(0.6529)) == doctest::Approx(0.6529).epsilon(1e-15));
}

TEST_CASE("photon wavelength") {
  CHECK(photon_wavelength(1.426676) == doctest::Approx(869.05).epsilon(1e-4));
  CHECK(photon_wavelength(1239.8419843320025) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(photon_wavelength(0.0), DomainError);
  CHECK_THROWS_AS(photon_wavelength(-1.0), DomainError);
}

TEST_CASE("derived constants must stay consistent with the base ones") {
  PhysicalConstants c = codata2018();
  c.wavenumber_factor *= 1.001;
  CHECK_THROWS_AS(c.validate(), DomainError);

  const PhysicalConstants d = PhysicalConstants::from_base(1.0e-34, 9.0e-31, 1.6e-19, 1240.0);
  CHECK_NOTHROW(d.validate());
  CHECK(d.hbar_eV_s == doctest::Approx(1.0e-34 / 1.6e-19).epsilon(1e-15));

  CHECK_THROWS_AS(PhysicalConstants::from_base(-1.0e-34, 9.0e-31, 1.6e-19, 1240.0).validate(),
                  DomainError);
}
