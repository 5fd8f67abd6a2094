// SPDX-License-Identifier: Apache-2.0
#include "vacfric/relativity.hpp"

#include <cmath>
#include <numbers>

#include "vacfric/errors.hpp"
#include "vacfric/golden_rule.hpp"

namespace vacfric {

namespace {

void require_subluminal(double beta) {
  if (!std::isfinite(beta) || !(std::abs(beta) < 1.0)) {
    throw DomainError("velocity must satisfy |v| < c");
  }
}

FrictionConsistency compare(const Vec3& drift, const Vec3& mass_loss) {
  FrictionConsistency r{drift, mass_loss, 0.0};
  const double gap = norm(drift - mass_loss);
  const double scale = norm(drift);
  r.deviation = scale > 0.0 ? gap / scale : gap;
  return r;
}

}  // namespace

double lorentz_gamma_minus_one(double beta) {
  require_subluminal(beta);
  return std::expm1(-0.5 * std::log1p(-beta * beta));
}

double lorentz_gamma(double beta) {
  require_subluminal(beta);
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

DopplerPair doppler_pair(double omega_0, double beta) {
  const double gamma = lorentz_gamma(beta);
  return {omega_0 * gamma * (1.0 - beta), omega_0 * gamma * (1.0 + beta)};
}

EnergyMomentumChange balance(const EmitterScenario& e) {
  const Constants k = constants(e.units);
  const double dE = -2.0 * k.hbar * e.omega_0 * e.gamma;
  // omega_r - omega_l = 2 omega_0 gamma v/c; taking the difference of the pair
  // directly would cancel catastrophically at small v.
  return {dE, dE * e.beta / k.c};
}

EmitterScenario make_emitter(double omega_0, double beta, UnitSystem units) {
  if (!std::isfinite(omega_0) || !(omega_0 > 0.0)) {
    throw DomainError("emitter frequency must be positive");
  }
  EmitterScenario e;
  e.omega_0 = omega_0;
  e.beta = beta;
  e.units = units;
  e.gamma = lorentz_gamma(beta);
  const DopplerPair pair = doppler_pair(omega_0, beta);
  e.omega_l = pair.omega_l;
  e.omega_r = pair.omega_r;
  const EnergyMomentumChange b = balance(e);
  e.dE = b.dE;
  e.dp = b.dp;
  return e;
}

double mass_rate(double gamma_decay, double omega_A, UnitSystem units) {
  if (!(gamma_decay >= 0.0) || !(omega_A > 0.0)) {
    throw DomainError("mass_rate: rate must be non-negative and omega_A positive");
  }
  const Constants k = constants(units);
  return -gamma_decay * k.hbar * omega_A / (k.c * k.c);
}

FrictionConsistency friction_consistency(const AtomParams& atom) {
  atom.validate();
  const Constants k = constants(atom.unit_system);
  const double c3 = k.c * k.c * k.c;
  const double gamma0 = atom.omega_A * atom.omega_A * atom.omega_A * atom.d * atom.d /
                        (3.0 * std::numbers::pi * k.eps0 * k.hbar * c3);
  const double epsilon = k.hbar * atom.omega_A / (atom.M * k.c * k.c);
  const Vec3 drift = -gamma0 * epsilon * atom.p0;
  const Vec3 v0 = atom.p0 / atom.M;
  return compare(drift, mass_rate(gamma0, atom.omega_A, atom.unit_system) * v0);
}

FrictionConsistency friction_consistency(const Scenario& s) {
  // Natural units: dM/dt = -Gamma_0 and v0 = beta.
  return compare(momentum_drift_closed(s), mass_rate(rest_decay_rate(s), 1.0) * s.beta);
}

}  // namespace vacfric
