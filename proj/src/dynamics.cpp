#include "wellcascade/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "wellcascade/errors.hpp"

namespace wellcascade {

void ResonantPair::validate() const {
  if (!std::isfinite(e_plus) || !std::isfinite(e_minus)) {
    throw DomainError("resonant pair energies must be finite");
  }
  if (!(e_plus > e_minus)) throw DomainError("resonant pair needs E+ > E- (positive splitting)");
}

ResonantPair make_resonant_pair(double e_plus, double e_minus) {
  ResonantPair p{e_plus, e_minus, std::nullopt, std::nullopt, std::nullopt};
  p.validate();
  return p;
}

double rabi_amplitude(const ResonantPair& pair) {
  if (pair.resonant_mode()) return 1.0;
  const double w2 = 4.0 * *pair.w12 * *pair.w12;
  const double detuning = *pair.e1 - *pair.e2;
  if (w2 == 0.0) return 0.0;
  return w2 / (detuning * detuning + w2);
}

double rabi_probability(double t_seconds, const ResonantPair& pair, const PhysicalConstants& c) {
  if (!(t_seconds >= 0.0)) throw DomainError("rabi_probability: time must be non-negative");
  pair.validate();
  const double s = std::sin(pair.splitting() * t_seconds / (2.0 * c.hbar_eV_s));
  return rabi_amplitude(pair) * s * s;
}

double tunneling_time(const ResonantPair& pair, int k, const PhysicalConstants& c) {
  if (k < 0) throw DomainError("tunneling_time: k must be non-negative");
  if (!(pair.splitting() > 0.0)) throw DomainError("tunneling_time: splitting must be positive");
  return (2.0 * k + 1.0) * std::numbers::pi * c.hbar_eV_s / pair.splitting();
}

double decay_time(double delta_E_eV, const PhysicalConstants& c) {
  if (!(delta_E_eV > 0.0)) throw DomainError("decay_time: energy gap must be positive");
  return c.hbar_eV_s / (2.0 * delta_E_eV);
}

double first_maximum_time(const ResonantPair& pair, const PhysicalConstants& c) {
  pair.validate();
  // Step forward in fractions of hbar / splitting until P stops increasing.
  const double scale = c.hbar_eV_s / pair.splitting();
  const double dt = scale / 64.0;
  double t = 0.0;
  double p = rabi_probability(t, pair, c);
  for (int i = 0; i < 1 << 20; ++i) {
    const double next = rabi_probability(t + dt, pair, c);
    if (next < p) break;
    t += dt;
    p = next;
  }
  // The maximum lies in [t - dt, t + dt].
  double lo = std::max(0.0, t - dt);
  double hi = t + dt;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = rabi_probability(x1, pair, c);
  double f2 = rabi_probability(x2, pair, c);
  while (hi - lo > 1e-12 * hi) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = rabi_probability(x1, pair, c);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = rabi_probability(x2, pair, c);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wellcascade
