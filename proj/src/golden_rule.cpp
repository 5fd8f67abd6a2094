// SPDX-License-Identifier: Apache-2.0
#include "vacfric/golden_rule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vacfric/coupling.hpp"
#include "vacfric/errors.hpp"

namespace vacfric {

namespace {

constexpr double pi = std::numbers::pi;
// pi / (2 pi)^3
constexpr double golden_prefactor = 1.0 / (8.0 * pi * pi);

/// Ordered sum of term(node) over the grid, adding antipodal pairs first so
/// that terms odd under kappa -> -kappa cancel exactly.
template <typename T, typename Term>
T direction_sum(const DirectionGrid& grid, Term&& term) {
  T sum{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto j = grid.antipode(i);
    if (!j) {
      sum += term(grid[i]);
    } else if (*j > i) {
      sum += term(grid[i]) + term(grid[*j]);
    }
  }
  return sum;
}

}  // namespace

double detuning(const Mode& mode, const Scenario& s) {
  return resonance_function(mode.omega, mode.kappa, s);
}

double resonance_function(double omega, const Vec3& kappa, const Scenario& s) {
  return 1.0 - omega * (1.0 - dot(kappa, s.beta)) - 0.5 * s.epsilon * omega * omega;
}

RadialReduction omega_plus(const Vec3& kappa, const Scenario& s) {
  const double x = 1.0 - dot(kappa, s.beta);
  if (!(x > 0.0)) throw DomainError("omega_plus: 1 - kappa.beta must be positive");
  RadialReduction r;
  r.jacobian = std::sqrt(x * x + 2.0 * s.epsilon);
  // (-x + sqrt(x^2 + 2 eps)) / eps, rationalized so that eps -> 0 is regular.
  r.omega_plus = 2.0 / (x + r.jacobian);
  r.omega_plus_first_order = 1.0 + dot(kappa, s.beta) - 0.5 * s.epsilon;
  return r;
}

double f_gamma(double omega, const Vec3& kappa, const Scenario& s) {
  double pol = polarization_sum_scalar(kappa, s.e_d, s.d);
  if (s.roentgen) {
    const Vec3 a = 2.0 * (s.beta - (0.5 * s.epsilon * omega) * kappa);
    pol += polarization_sum_vector(kappa, s.e_d, s.d, a);
  }
  return omega * omega * omega * pol;
}

RadialReduction radial_reduction(const Vec3& kappa, const Scenario& s) {
  RadialReduction r = omega_plus(kappa, s);
  r.f_gamma_value = f_gamma(r.omega_plus, kappa, s) / r.jacobian;
  r.f_pdot_value = r.omega_plus * r.f_gamma_value;
  return r;
}

double radial_integrand(const Vec3& kappa, const Scenario& s, Moment which,
                        RadialStrategy strategy) {
  if (strategy == RadialStrategy::exact) {
    const RadialReduction r = radial_reduction(kappa, s);
    return which == Moment::gamma ? r.f_gamma_value : r.f_pdot_value;
  }
  const double kb = dot(kappa, s.beta);
  const double transverse = polarization_sum_scalar(kappa, s.e_d, s.d);
  // Moments omega^n: f + omega f' gives n+1, 2f + omega f' gives n+2.
  const double n = which == Moment::gamma ? 3.0 : 4.0;
  if (!s.roentgen) {
    // Without the Roentgen term only the omega^n density and the root shift.
    return transverse * (1.0 - 0.5 * (n + 2.0) * s.epsilon + (n + 1.0) * kb);
  }
  const Vec3 dv = s.dipole();
  const double roentgen = s.d * s.d * kb - dot(s.beta, dv) * dot(dv, kappa);
  return transverse * (1.0 - 0.5 * n * s.epsilon + (n + 1.0) * kb) - 2.0 * roentgen;
}

double decay_rate_quadrature(const Scenario& s, const DirectionGrid& grid,
                             RadialStrategy strategy) {
  if (grid.size() == 0) throw DomainError("decay_rate_quadrature: empty grid");
  const double sum = direction_sum<double>(grid, [&](const DirectionNode& n) {
    return n.weight * radial_integrand(n.kappa, s, Moment::gamma, strategy);
  });
  return golden_prefactor * sum;
}

Vec3 momentum_drift_quadrature(const Scenario& s, const DirectionGrid& grid,
                               RadialStrategy strategy) {
  if (grid.size() == 0) throw DomainError("momentum_drift_quadrature: empty grid");
  const Vec3 sum = direction_sum<Vec3>(grid, [&](const DirectionNode& n) {
    return (n.weight * radial_integrand(n.kappa, s, Moment::pdot, strategy)) * n.kappa;
  });
  return -golden_prefactor * sum;
}

double rest_decay_rate(const Scenario& s) { return s.d * s.d / (3.0 * pi); }

double decay_rate_closed(const Scenario& s) {
  return rest_decay_rate(s) * (1.0 - 1.5 * s.epsilon);
}

Vec3 momentum_drift_closed(const Scenario& s) { return -rest_decay_rate(s) * s.beta; }

DecayReport decay_report(const Scenario& s, const DirectionGrid& grid) {
  DecayReport r;
  r.gamma_quad = decay_rate_quadrature(s, grid);
  r.drift_quad = momentum_drift_quadrature(s, grid);
  r.gamma_closed = decay_rate_closed(s);
  r.drift_closed = momentum_drift_closed(s);
  r.rel_dev_gamma = std::abs(r.gamma_quad - r.gamma_closed) / r.gamma_closed;
  const double gap = norm(r.drift_quad - r.drift_closed);
  const double scale = norm(r.drift_closed);
  r.rel_dev_drift = scale > 0.0 ? gap / scale : gap;
  return r;
}

double AngularOracles::max_abs_deviation() const {
  double dev = std::abs(transverse_quad - transverse_exact);
  dev = std::max(dev, norm(doppler_quad - doppler_exact));
  dev = std::max(dev, norm(roentgen_quad - roentgen_exact));
  return dev;
}

AngularOracles angular_oracles(const DirectionGrid& grid, const Vec3& dipole, const Vec3& p) {
  const double d2 = dot(dipole, dipole);
  const double pd = dot(p, dipole);
  const double sphere = 8.0 * pi / 3.0;

  AngularOracles o;
  o.transverse_quad = direction_sum<double>(grid, [&](const DirectionNode& n) {
    const double dk = dot(dipole, n.kappa);
    return n.weight * (d2 - dk * dk);
  });
  o.doppler_quad = direction_sum<Vec3>(grid, [&](const DirectionNode& n) {
    const double dk = dot(dipole, n.kappa);
    return (5.0 * n.weight * dot(n.kappa, p) * (d2 - dk * dk)) * n.kappa;
  });
  o.roentgen_quad = direction_sum<Vec3>(grid, [&](const DirectionNode& n) {
    return (2.0 * n.weight * (d2 * dot(n.kappa, p) - dot(n.kappa, dipole) * pd)) * n.kappa;
  });
  o.transverse_exact = sphere * d2;
  o.doppler_exact = sphere * (2.0 * d2 * p - pd * dipole);
  o.roentgen_exact = sphere * (d2 * p - pd * dipole);
  return o;
}

}  // namespace vacfric
