#include "wellcascade/transcendental.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "wellcascade/errors.hpp"

namespace wellcascade {

namespace {

constexpr double kPoleTolerance = 1e-12;

// sin(k w)/k, continuous at k = 0.
double sinc_len(double k, double w) {
  const double x = k * w;
  return std::abs(x) < 1e-8 ? w : std::sin(x) / k;
}

// Shallow-well boundary data at x = a for psi(0) = 0, psi'(0) = 1, in units
// where psi'(a) is dimensionless. The evanescent branch is multiplied by
// e^{-k1 a} so both entries stay O(1).
struct WellEdge {
  double psi;   // sin(k1 a)/k1 or e^{-k1 a} sinh(k1 a)/k1
  double dpsi;  // cos(k1 a) or e^{-k1 a} cosh(k1 a)
};

WellEdge shallow_edge(const WavenumberSet& w, double a) {
  if (w.regime == Regime::B) return {sinc_len(w.k1, a), std::cos(w.k1 * a)};
  const double x = w.k1 * a;
  const double q = std::exp(-2.0 * x);
  const double s = x < 1e-8 ? a : -std::expm1(-2.0 * x) / (2.0 * w.k1);
  return {s, 0.5 * (1.0 + q)};
}

WellEdge deep_edge(const WavenumberSet& w, double a) {
  return {sinc_len(w.k2, a), std::cos(w.k2 * a)};
}

void require_inside(const WellPair& pair, double energy_eV) {
  if (!(energy_eV > 0.0 && energy_eV < pair.v_deep)) {
    std::ostringstream os;
    os << "energy " << energy_eV << " eV outside the bound-state range (0, " << pair.v_deep
       << ") eV";
    throw DomainError(os.str());
  }
}

struct Sides {
  double nf, df, norm_f;  // lhs = nf / df
  double ng, dg, norm_g;  // rhs = damping * ng / dg
  double damping;         // e^{-2 beta (L - a)}
};

Sides sides(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const WavenumberSet w = wavenumbers(pair, energy_eV, c);
  const WellEdge s = shallow_edge(w, pair.width);
  const WellEdge d = deep_edge(w, pair.width);
  Sides out{};
  out.nf = w.beta * s.psi + s.dpsi;
  out.df = w.beta * s.psi - s.dpsi;
  out.norm_f = std::hypot(w.beta * s.psi, s.dpsi);
  out.ng = w.beta * d.psi - d.dpsi;
  out.dg = w.beta * d.psi + d.dpsi;
  out.norm_g = std::hypot(w.beta * d.psi, d.dpsi);
  out.damping = std::exp(-2.0 * w.beta * pair.barrier_width());
  return out;
}

// Integers n with lo < n pi < hi.
int multiples_of_pi_between(double lo, double hi) {
  const double pi = std::numbers::pi;
  return static_cast<int>(std::ceil(hi / pi) - 1.0 - std::floor(lo / pi));
}

}  // namespace

std::string_view to_string(Regime r) { return r == Regime::A ? "A" : "B"; }

Regime classify_regime(const WellPair& pair, double energy_eV) {
  require_inside(pair, energy_eV);
  return energy_eV < pair.shallow_floor() ? Regime::A : Regime::B;
}

WavenumberSet wavenumbers(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const Regime r = classify_regime(pair, energy_eV);
  const double floor = pair.shallow_floor();
  WavenumberSet w{};
  w.regime = r;
  w.k1 = r == Regime::A ? wavenumber(floor - energy_eV, c) : wavenumber(energy_eV - floor, c);
  w.beta = wavenumber(pair.v_deep - energy_eV, c);
  w.k2 = wavenumber(energy_eV, c);
  return w;
}

BranchValue lhs(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const Sides s = sides(pair, energy_eV, c);
  const bool pole = std::abs(s.df) < kPoleTolerance * s.norm_f;
  return {pole ? 0.0 : s.nf / s.df, pole};
}

BranchValue rhs(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const Sides s = sides(pair, energy_eV, c);
  const bool pole = std::abs(s.dg) < kPoleTolerance * s.norm_g;
  return {pole ? 0.0 : s.damping * s.ng / s.dg, pole};
}

BranchValue mismatch(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const BranchValue f = lhs(pair, energy_eV, c);
  const BranchValue g = rhs(pair, energy_eV, c);
  if (f.pole || g.pole) return {0.0, true};
  return {f.value - g.value, false};
}

double secular(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const Sides s = sides(pair, energy_eV, c);
  return (s.nf * s.dg - s.damping * s.ng * s.df) / (s.norm_f * s.norm_g);
}

int count_below(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  if (!(energy_eV > 0.0 && energy_eV <= pair.v_deep)) {
    throw DomainError("count_below: energy must lie in (0, v_deep]");
  }
  const double a = pair.width;
  const double b = pair.barrier_width();
  const double floor = pair.shallow_floor();
  const double k2 = wavenumber(energy_eV, c);
  const double beta = wavenumber(pair.v_deep - energy_eV, c);
  int zeros = 0;

  // Shallow well, launched with psi(0) = 0, psi'(0) = 1.
  WellEdge edge{};
  if (energy_eV >= floor) {
    const double k1 = wavenumber(energy_eV - floor, c);
    zeros += multiples_of_pi_between(0.0, k1 * a);
    edge = {sinc_len(k1, a), std::cos(k1 * a)};
  } else {
    edge = shallow_edge({wavenumber(floor - energy_eV, c), beta, k2, Regime::A}, a);
  }
  if (edge.psi == 0.0) ++zeros;

  // Barrier: at most one zero, present iff psi changes sign across it.
  const double x = beta * b;
  const double ch = 0.5 * (1.0 + std::exp(-2.0 * x));  // e^{-x} cosh x
  const double sh = x < 1e-8 ? b : -std::expm1(-2.0 * x) / (2.0 * beta);  // e^{-x} sinh x / beta
  const double psi_l = edge.psi * ch + edge.dpsi * sh;
  const double dpsi_l = edge.psi * beta * beta * sh + edge.dpsi * ch;
  if (edge.psi != 0.0 && psi_l != 0.0 && std::signbit(edge.psi) != std::signbit(psi_l)) ++zeros;
  if (psi_l == 0.0) ++zeros;

  // Deep well: psi = R sin(k2 x + phase).
  const double phase = std::atan2(k2 * psi_l, dpsi_l);
  zeros += multiples_of_pi_between(phase, phase + k2 * a);
  return zeros;
}

namespace unscaled {

double f0(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const WavenumberSet w = wavenumbers(pair, energy_eV, c);
  if (w.regime != Regime::A) throw DomainError("f0 is defined below the shallow floor only");
  const double L = pair.distance, a = pair.width, k1 = w.k1, beta = w.beta;
  const double num = ((k1 - beta) * std::exp(k1 * (L - a)) + (k1 + beta) * std::exp(k1 * (L + a))) *
                     std::exp(beta * (L - a));
  const double den = (-k1 + beta) * std::exp(k1 * (L + a)) - (k1 + beta) * std::exp(k1 * (L - a));
  return num / den;
}

double g0(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const WavenumberSet w = wavenumbers(pair, energy_eV, c);
  const double cot = 1.0 / std::tan(w.k2 * pair.width);
  return (w.beta - w.k2 * cot) * std::exp(-w.beta * pair.barrier_width()) /
         (w.beta + w.k2 * cot);
}

double f1(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  const WavenumberSet w = wavenumbers(pair, energy_eV, c);
  if (w.regime != Regime::B) throw DomainError("f1 is defined above the shallow floor only");
  const double cot = 1.0 / std::tan(w.k1 * pair.width);
  return (w.beta + w.k1 * cot) * std::exp(w.beta * pair.barrier_width()) /
         (w.beta - w.k1 * cot);
}

double g1(const WellPair& pair, double energy_eV, const PhysicalConstants& c) {
  return g0(pair, energy_eV, c);
}

}  // namespace unscaled

std::vector<ScanRow> scan(const WellPair& pair, double emin, double emax, double step,
                          double energy_shift, const PhysicalConstants& c) {
  if (!(step > 0.0) || !(emax >= emin)) throw DomainError("scan needs emin <= emax and step > 0");
  const auto n = static_cast<long>(std::floor((emax - emin) / step + 1e-9));
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) {
    const double e = emin + static_cast<double>(i) * step;
    const double local = e - energy_shift;
    if (!(local > 0.0 && local < pair.v_deep)) continue;
    const BranchValue f = lhs(pair, local, c);
    const BranchValue g = rhs(pair, local, c);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool pole = f.pole || g.pole;
    rows.push_back({e, f.pole ? nan : f.value, g.pole ? nan : g.value,
                    pole ? nan : f.value - g.value, classify_regime(pair, local), pole});
  }
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "E_eV,lhs,rhs,mismatch,regime,pole_flag\n";
  const auto old = os.precision(12);
  for (const ScanRow& r : rows) {
    os << r.energy_eV << ',' << r.lhs << ',' << r.rhs << ',' << r.mismatch << ','
       << to_string(r.regime) << ',' << (r.pole ? 1 : 0) << '\n';
  }
  os.precision(old);
}

}  // namespace wellcascade
