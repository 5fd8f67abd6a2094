// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vacfric/core_scales.hpp"
#include "vacfric/mode_bath.hpp"
#include "vacfric/vec3.hpp"

namespace vacfric {

/// Interaction scalars for one mode at one momentum.
struct CouplingFactors {
  double g = 0.0;     // eigenvalue of the momentum-dependent coupling
  Vec3 b_vec;         // (kappa x eps) x e_d
  double omega_rabi_sq_weight = 0.0;  // Omega^2 with the continuum measure folded in
};

/// (kappa x eps) x e_d, exactly.
Vec3 b_vector(const Mode& mode, const Vec3& e_d);

/// g = eps . e_d + (p - hbar k / 2) . b / (M c), k = kappa omega / c, in the
/// atom's own units. No expansion in 1/M.
double coupling_g(const Mode& mode, const Vec3& p, const AtomParams& atom);

/// Same quantity for a natural-unit scenario, with the momentum given as
/// beta_p = p / (M c). The recoil shift hbar k/(2 M c) is epsilon*omega*kappa/2.
double coupling_g(const Mode& mode, const Vec3& beta_p, const Scenario& s);

/// g^2 truncated at first order in 1/(M c), evaluated at the scenario's p0.
double g_squared_expanded(const Mode& mode, const Scenario& s);

/// sum_lambda (d . eps_lambda)^2 = d^2 - (d . kappa)^2.
double polarization_sum_scalar(const Vec3& kappa, const Vec3& e_d, double d);

/// sum_lambda (d . eps_lambda) a . ((kappa x eps_lambda) x d) =
/// (d . kappa)(a . d) - d^2 (a . kappa), d = d e_d.
double polarization_sum_vector(const Vec3& kappa, const Vec3& e_d, double d, const Vec3& a);

/// Continuum measure prefactor d^2 omega^3 / (2 (2 pi)^3) per unit solid angle
/// and frequency (natural units).
double coupling_density(double omega, double d);

/// Omega^2_eff = coupling_density(omega) * w_dir * w_om for a discrete mode, so
/// that sum over modes of Omega^2_eff X(mode) approaches the continuum integral.
double mode_coupling_weight(const Mode& mode, const Scenario& s);

CouplingFactors coupling_factors(const Mode& mode, const Vec3& beta_p, const Scenario& s);

}  // namespace vacfric
