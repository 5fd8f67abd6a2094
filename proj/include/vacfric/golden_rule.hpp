// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vacfric/core_scales.hpp"
#include "vacfric/mode_bath.hpp"
#include "vacfric/vec3.hpp"

namespace vacfric {

/// Energy mismatch between |e, p0> and |g, p0 - hbar k, 1_k>:
/// omega_A - omega + k . (p0 - hbar k / 2) / M (natural units).
double detuning(const Mode& mode, const Scenario& s);

/// Delta-function resolution along one direction kappa.
///
/// h(omega) = 1 - omega (1 - kappa.beta) - epsilon omega^2 / 2 has a single
/// positive root omega_plus; |h'(omega_plus)| = sqrt((1 - kappa.beta)^2 + 2 epsilon).
struct RadialReduction {
  double omega_plus = 0.0;
  double jacobian = 0.0;
  /// 1 + kappa.beta - epsilon/2, the first-order expansion of the root.
  double omega_plus_first_order = 0.0;
  double f_gamma_value = 0.0;  // f_Gamma(omega_plus) / |h'|
  double f_pdot_value = 0.0;   // omega_plus * f_gamma_value
};

/// Root and Jacobian only (f_* left at zero). Requires 1 - kappa.beta > 0.
RadialReduction omega_plus(const Vec3& kappa, const Scenario& s);

/// h(omega) for direction kappa; zero at omega_plus.
double resonance_function(double omega, const Vec3& kappa, const Scenario& s);

enum class Moment { gamma, pdot };

enum class RadialStrategy {
  /// f(omega_plus)/|h'(omega_plus)| with the root and Jacobian kept exact.
  exact,
  /// The first-order angular polynomial obtained by expanding f/|h'| about omega_A.
  expanded,
};

/// Polarization-summed d^2 g^2 (first order in 1/(M c)) times omega^3.
double f_gamma(double omega, const Vec3& kappa, const Scenario& s);

/// Root, Jacobian and both reduced integrands for direction kappa.
RadialReduction radial_reduction(const Vec3& kappa, const Scenario& s);

/// The omega-integral of f * delta(h) along kappa: the gamma moment, or the
/// scalar factor of the momentum moment (kappa multiplies it outside).
double radial_integrand(const Vec3& kappa, const Scenario& s, Moment which,
                        RadialStrategy strategy = RadialStrategy::exact);

/// Gamma = (pi / (2 pi)^3) sum_dirs w f_Gamma / |h'|.
double decay_rate_quadrature(const Scenario& s, const DirectionGrid& grid,
                             RadialStrategy strategy = RadialStrategy::exact);

/// d<P>/dt = -(pi / (2 pi)^3) sum_dirs w kappa f_Pdot / |h'|, in units of
/// hbar omega_A^2 / c.
Vec3 momentum_drift_quadrature(const Scenario& s, const DirectionGrid& grid,
                               RadialStrategy strategy = RadialStrategy::exact);

/// Gamma_0 = d^2 / (3 pi): the rate of an infinitely heavy atom.
double rest_decay_rate(const Scenario& s);

/// Gamma_0 (1 - 3 epsilon / 2).
double decay_rate_closed(const Scenario& s);

/// -Gamma_0 epsilon p0 = -Gamma_0 beta. Uses Gamma_0 without the recoil factor.
Vec3 momentum_drift_closed(const Scenario& s);

struct DecayReport {
  double gamma_quad = 0.0;
  Vec3 drift_quad;
  double gamma_closed = 0.0;
  Vec3 drift_closed;
  double rel_dev_gamma = 0.0;
  /// |drift_quad - drift_closed| / |drift_closed|; the absolute deviation when
  /// the closed form vanishes.
  double rel_dev_drift = 0.0;
};

DecayReport decay_report(const Scenario& s, const DirectionGrid& grid);

/// Quadrature against closed form for the three angular integrals that reduce
/// the golden-rule moments.
struct AngularOracles {
  double transverse_quad = 0.0;   // int (d^2 - (d.kappa)^2)
  double transverse_exact = 0.0;  // (8 pi / 3) d^2
  Vec3 doppler_quad;              // 5 int kappa (kappa.p) (d^2 - (d.kappa)^2)
  Vec3 doppler_exact;             // (8 pi / 3)(2 d^2 p - (p.d) d)
  Vec3 roentgen_quad;             // 2 int kappa (d^2 (kappa.p) - (kappa.d)(d.p))
  Vec3 roentgen_exact;            // (8 pi / 3)(d^2 p - (p.d) d)

  double max_abs_deviation() const;
};

AngularOracles angular_oracles(const DirectionGrid& grid, const Vec3& dipole, const Vec3& p);

}  // namespace vacfric
