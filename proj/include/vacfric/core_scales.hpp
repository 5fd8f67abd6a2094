// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vacfric/vec3.hpp"

namespace vacfric {

enum class UnitSystem { natural, si };

/// hbar, c and the vacuum permittivity for a unit system.
struct Constants {
  double hbar;
  double c;
  double eps0;
};

Constants constants(UnitSystem units);

/// The physical scenario: a two-level atom with transition frequency omega_A,
/// dipole d * e_d, mass M and initial canonical momentum p0.
struct AtomParams {
  double omega_A = 1.0;
  double d = 1.0;
  Vec3 e_d = unit_x;
  double M = 1.0;
  Vec3 p0{};
  UnitSystem unit_system = UnitSystem::natural;

  /// Throws DomainError unless all fields are finite, d, M, omega_A > 0 and
  /// |e_d| = 1 within 1e-12.
  void validate() const;
};

/// Dimensionless recoil parameter hbar*omega_A/(M c^2) and velocity p0/(M c).
struct SmallParams {
  double epsilon = 0.0;
  Vec3 beta{};
  /// False outside the first-order regime (epsilon > 0.1 or |beta| > 0.1).
  bool valid = true;
};

inline constexpr double first_order_limit = 0.1;

SmallParams small_params(const AtomParams& atom);

/// Rescales to hbar = c = eps0 = 1 and omega_A = 1. epsilon and beta are
/// invariants of the rescaling.
AtomParams to_natural(const AtomParams& atom);

/// Conversion factors from natural units back to the atom's unit system.
struct NaturalScales {
  double frequency = 1.0;  // omega_A
  double time = 1.0;       // 1/omega_A
  double energy = 1.0;     // hbar*omega_A
  double momentum = 1.0;   // hbar*omega_A/c
  double mass = 1.0;       // hbar*omega_A/c^2
};

NaturalScales natural_scales(const AtomParams& atom);

/// Engine-side description in natural units (hbar = c = eps0 = omega_A = 1).
///
/// Everything the engines compute depends only on the dipole and the two small
/// parameters, so the scenario is stored in that form. epsilon = 0 is the
/// infinitely heavy atom; beta may stay nonzero in that limit, in which case
/// the canonical momentum p0 = beta/epsilon is unbounded and momentum() throws.
struct Scenario {
  double d = 1.0;
  Vec3 e_d = unit_x;
  double epsilon = 0.0;
  Vec3 beta{};
  /// When false the Roentgen (B x d) coupling is dropped and g = eps . e_d.
  bool roentgen = true;

  static Scenario from_atom(const AtomParams& atom);
  static Scenario from_small(double d, const Vec3& e_d, double epsilon, const Vec3& beta);

  /// Dipole vector d * e_d.
  Vec3 dipole() const { return d * e_d; }
  /// M in units of hbar*omega_A/c^2; +inf when epsilon == 0.
  double mass() const;
  /// p0 in units of hbar*omega_A/c.
  Vec3 momentum() const;
  SmallParams small() const;

  void validate() const;
};

}  // namespace vacfric
