// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vacfric/core_scales.hpp"
#include "vacfric/vec3.hpp"

namespace vacfric {

/// Lorentz factor from v/c.
double lorentz_gamma(double beta);

/// gamma - 1 without cancellation for small |v/c|.
double lorentz_gamma_minus_one(double beta);

struct DopplerPair {
  double omega_l;  // photon sent against the motion
  double omega_r;  // photon sent along the motion
};

/// omega_l = omega_0 gamma (1 - v/c), omega_r = omega_0 gamma (1 + v/c).
/// Throws DomainError for |v| >= c.
DopplerPair doppler_pair(double omega_0, double beta);

/// Two-way emitter seen from the lab while moving at v along the emission axis.
/// Velocities are stored as v/c.
struct EmitterScenario {
  double omega_0 = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double omega_l = 1.0;
  double omega_r = 1.0;
  double dE = 0.0;
  double dp = 0.0;
  UnitSystem units = UnitSystem::natural;
};

struct EnergyMomentumChange {
  double dE;
  double dp;
};

/// dE = -hbar (omega_l + omega_r) = -2 hbar omega_0 gamma,
/// dp = -hbar (omega_r - omega_l) / c = dE v / c^2.
EnergyMomentumChange balance(const EmitterScenario& e);

/// Fills the Doppler pair and the energy/momentum changes.
EmitterScenario make_emitter(double omega_0, double beta, UnitSystem units = UnitSystem::natural);

/// dM/dt = -Gamma hbar omega_A / c^2.
double mass_rate(double gamma_decay, double omega_A, UnitSystem units = UnitSystem::natural);

/// Golden-rule friction against the mass-defect picture dM/dt * v0.
struct FrictionConsistency {
  Vec3 drift;            // -Gamma_0 (hbar omega_A / M c^2) p0
  Vec3 mass_loss_drift;  // dM/dt * p0 / M
  double deviation = 0.0;  // |drift - mass_loss_drift| / |drift|, absolute when drift == 0
};

FrictionConsistency friction_consistency(const AtomParams& atom);
FrictionConsistency friction_consistency(const Scenario& s);

}  // namespace vacfric
