// SPDX-License-Identifier: Apache-2.0
#include "vacfric/coupling.hpp"

#include <numbers>

namespace vacfric {

Vec3 b_vector(const Mode& mode, const Vec3& e_d) { return cross(cross(mode.kappa, mode.eps), e_d); }

double coupling_g(const Mode& mode, const Vec3& p, const AtomParams& atom) {
  const Constants k = constants(atom.unit_system);
  const Vec3 half_photon = (k.hbar * mode.omega / (2.0 * k.c)) * mode.kappa;
  return dot(mode.eps, atom.e_d) + dot(p - half_photon, b_vector(mode, atom.e_d)) / (atom.M * k.c);
}

double coupling_g(const Mode& mode, const Vec3& beta_p, const Scenario& s) {
  const double transverse = dot(mode.eps, s.e_d);
  if (!s.roentgen) return transverse;
  const Vec3 shifted = beta_p - (0.5 * s.epsilon * mode.omega) * mode.kappa;
  return transverse + dot(shifted, b_vector(mode, s.e_d));
}

double g_squared_expanded(const Mode& mode, const Scenario& s) {
  const double transverse = dot(mode.eps, s.e_d);
  if (!s.roentgen) return transverse * transverse;
  const Vec3 shifted = s.beta - (0.5 * s.epsilon * mode.omega) * mode.kappa;
  return transverse * transverse + 2.0 * transverse * dot(shifted, b_vector(mode, s.e_d));
}

double polarization_sum_scalar(const Vec3& kappa, const Vec3& e_d, double d) {
  const double dk = d * dot(e_d, kappa);
  return d * d - dk * dk;
}

double polarization_sum_vector(const Vec3& kappa, const Vec3& e_d, double d, const Vec3& a) {
  const Vec3 dv = d * e_d;
  return dot(dv, kappa) * dot(a, dv) - d * d * dot(a, kappa);
}

double coupling_density(double omega, double d) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return d * d * omega * omega * omega / (2.0 * two_pi * two_pi * two_pi);
}

double mode_coupling_weight(const Mode& mode, const Scenario& s) {
  return coupling_density(mode.omega, s.d) * mode.w_dir * mode.w_om;
}

CouplingFactors coupling_factors(const Mode& mode, const Vec3& beta_p, const Scenario& s) {
  return {coupling_g(mode, beta_p, s), b_vector(mode, s.e_d), mode_coupling_weight(mode, s)};
}

}  // namespace vacfric
