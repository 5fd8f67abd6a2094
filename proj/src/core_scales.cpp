// SPDX-License-Identifier: Apache-2.0
#include "vacfric/core_scales.hpp"

#include <cmath>
#include <limits>

#include "vacfric/errors.hpp"

namespace vacfric {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool in_first_order_regime(double epsilon, const Vec3& beta) {
  return epsilon <= first_order_limit && norm(beta) <= first_order_limit;
}

}  // namespace

Constants constants(UnitSystem units) {
  if (units == UnitSystem::natural) return {1.0, 1.0, 1.0};
  // CODATA 2018
  return {1.054571817e-34, 299792458.0, 8.8541878128e-12};
}

void AtomParams::validate() const {
  require(std::isfinite(omega_A) && std::isfinite(d) && std::isfinite(M) && is_finite(e_d) &&
              is_finite(p0),
          "atom parameters must be finite");
  require(omega_A > 0.0, "omega_A must be positive");
  require(d > 0.0, "dipole magnitude must be positive");
  require(M > 0.0, "mass must be positive");
  require(std::abs(norm(e_d) - 1.0) <= 1e-12, "e_d must be a unit vector");
}

SmallParams small_params(const AtomParams& atom) {
  atom.validate();
  const Constants k = constants(atom.unit_system);
  const double rest_energy = atom.M * k.c * k.c;
  SmallParams s;
  s.epsilon = k.hbar * atom.omega_A / rest_energy;
  s.beta = atom.p0 / (atom.M * k.c);
  s.valid = in_first_order_regime(s.epsilon, s.beta);
  return s;
}

AtomParams to_natural(const AtomParams& atom) {
  atom.validate();
  if (atom.unit_system == UnitSystem::natural && atom.omega_A == 1.0) return atom;
  const Constants k = constants(atom.unit_system);
  const double energy = k.hbar * atom.omega_A;
  AtomParams out;
  out.unit_system = UnitSystem::natural;
  out.omega_A = 1.0;
  out.e_d = atom.e_d;
  // Gamma/omega_A = omega_A^2 d^2 / (3 pi eps0 hbar c^3) fixes the dipole unit.
  out.d = atom.d * atom.omega_A / std::sqrt(k.eps0 * k.hbar * k.c * k.c * k.c);
  out.M = atom.M * k.c * k.c / energy;
  out.p0 = atom.p0 * (k.c / energy);
  return out;
}

NaturalScales natural_scales(const AtomParams& atom) {
  const Constants k = constants(atom.unit_system);
  NaturalScales s;
  s.frequency = atom.omega_A;
  s.time = 1.0 / atom.omega_A;
  s.energy = k.hbar * atom.omega_A;
  s.momentum = s.energy / k.c;
  s.mass = s.energy / (k.c * k.c);
  return s;
}

Scenario Scenario::from_atom(const AtomParams& atom) {
  const AtomParams n = to_natural(atom);
  Scenario s;
  s.d = n.d;
  s.e_d = n.e_d;
  s.epsilon = 1.0 / n.M;
  s.beta = n.p0 / n.M;
  return s;
}

Scenario Scenario::from_small(double d, const Vec3& e_d, double epsilon, const Vec3& beta) {
  Scenario s;
  s.d = d;
  s.e_d = e_d;
  s.epsilon = epsilon;
  s.beta = beta;
  s.validate();
  return s;
}

double Scenario::mass() const {
  return epsilon > 0.0 ? 1.0 / epsilon : std::numeric_limits<double>::infinity();
}

Vec3 Scenario::momentum() const {
  if (beta == Vec3{}) return {};
  if (!(epsilon > 0.0)) throw DomainError("p0 is unbounded for an infinitely heavy moving atom");
  return beta / epsilon;
}

SmallParams Scenario::small() const {
  return {epsilon, beta, in_first_order_regime(epsilon, beta)};
}

void Scenario::validate() const {
  require(std::isfinite(d) && std::isfinite(epsilon) && is_finite(e_d) && is_finite(beta),
          "scenario parameters must be finite");
  require(d >= 0.0, "dipole magnitude must be non-negative");
  require(epsilon >= 0.0, "epsilon must be non-negative");
  require(std::abs(norm(e_d) - 1.0) <= 1e-12, "e_d must be a unit vector");
  require(norm(beta) < 1.0, "|beta| must be below 1");
}

}  // namespace vacfric
