// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vacfric/core_scales.hpp"
#include "vacfric/kernels.hpp"
#include "vacfric/mode_bath.hpp"
#include "vacfric/vec3.hpp"

namespace vacfric {

using cplx = std::complex<double>;

/// Discretized bath as seen by the amplitude equations, in structure-of-arrays
/// layout. Per mode: a = Omega g(p0), the detuning, the photon momentum hbar k
/// and Omega b.
class Bath {
 public:
  struct ModeData {
    double rabi = 0.0;  // Omega_k (sign convention hbar Omega = -d E)
    double g = 1.0;
    double detuning = 0.0;
    Vec3 photon_momentum;
    Vec3 b_vec;
  };

  Bath() = default;
  Bath(const std::vector<ModeData>& modes, const Vec3& p0);

  /// Omega_k = -sqrt(Omega^2_eff), g at p0, detuning and b from the coupling
  /// module. Requires a finite canonical momentum.
  static Bath from_grid(const Scenario& s, const ModeGrid& grid);

  std::size_t size() const { return coupling_.size(); }
  const Vec3& p0() const { return p0_; }

  double coupling(std::size_t k) const { return coupling_[k]; }
  double detuning(std::size_t k) const { return detuning_[k]; }
  Vec3 photon_momentum(std::size_t k) const { return {kx_[k], ky_[k], kz_[k]}; }
  /// Omega_k b_k
  Vec3 rabi_b(std::size_t k) const { return {bx_[k], by_[k], bz_[k]}; }

  /// Kernel view over this bath with caller-owned half-step rotors.
  kernels::BathView view(std::span<const double> rot_re, std::span<const double> rot_im) const;

 private:
  Vec3 p0_;
  std::vector<double> coupling_, detuning_;
  std::vector<double> kx_, ky_, kz_, bx_, by_, bz_;
};

/// c_e and all c_k at time t (interaction picture of the ansatz).
struct AmplitudeState {
  double t = 0.0;
  cplx c_e{1.0, 0.0};
  std::vector<cplx> c_modes;

  double norm() const;
};

/// <P> = p0 |c_e|^2 + sum (p0 - hbar k) |c_k|^2.
Vec3 expect_P(const AmplitudeState& state, const Bath& bath);

/// <B x d> = -2 Im sum Omega_k b_k c_e conj(c_k) exp(-i detuning_k t).
Vec3 expect_BxD(const AmplitudeState& state, const Bath& bath);

/// Sampled observables.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> population;  // |c_e|^2
  std::vector<Vec3> momentum;      // <P>
  std::vector<Vec3> roentgen;      // <B x d>
  std::vector<double> norm;
  double recurrence_time = 0.0;
  /// t_end exceeded the bath's recurrence time.
  bool recurrence_warning = false;

  std::size_t size() const { return t.size(); }
};

struct EvolveOptions {
  double t_end = 0.0;
  double dt_max = 0.0;
  std::size_t sample_every = 1;
  /// Norm drift beyond this raises IntegratorFailure.
  double norm_tolerance = 1e-6;
  /// Steps between exact re-evaluation of the phase factors.
  std::size_t resync_every = 64;
  /// 0 disables the recurrence check.
  double recurrence_time = 0.0;
};

/// Fixed-step classical RK4 for
///   dc_e/dt = sum_k a_k c_k exp(i detuning_k t),
///   dc_k/dt = -a_k c_e exp(-i detuning_k t),
/// from c_e = 1, c_k = 0. The system is linear and each c_k couples only to
/// c_e, so every stage is expressed through three phase-weighted sums.
class BathIntegrator {
 public:
  BathIntegrator(const Bath& bath, double dt, std::size_t resync_every = 64,
                 const kernels::KernelTable& table = kernels::active_kernels());

  void step();
  double time() const { return static_cast<double>(steps_) * dt_; }
  double dt() const { return dt_; }
  cplx c_e() const { return c_e_; }
  std::size_t steps() const { return steps_; }

  AmplitudeState state() const;
  kernels::Moments moments();

 private:
  void resync();

  const Bath* bath_;
  const kernels::KernelTable* table_;
  double dt_;
  std::size_t resync_every_;
  std::vector<double> rot_re_, rot_im_;
  kernels::BathView view_;
  std::vector<double> c_re_, c_im_, ph_re_, ph_im_;
  cplx c_e_{1.0, 0.0};
  kernels::PhaseSums sums_{};
  cplx rotor_sum_{};   // sum a^2 conj(H)
  double coupling_sq_ = 0.0;  // sum a^2
  std::size_t steps_ = 0;
};

Trajectory evolve(const Bath& bath, const EvolveOptions& options);

/// Builds the bath from the grid and fills in the recurrence check.
Trajectory evolve(const Scenario& s, const ModeGrid& grid, EvolveOptions options);

/// Same-grid golden-rule rate: 2 pi sum_{dirs, lambda} w_dir rho(omega_+)
/// g^2(omega_+) / |h'(omega_+)| with the exact g used by the amplitude equations.
double grid_golden_rule(const Scenario& s, const ModeGrid& grid);

/// Momentum-drift companion of grid_golden_rule (photon momentum omega_+ kappa).
Vec3 grid_golden_rule_drift(const Scenario& s, const ModeGrid& grid);

/// Shape of the default time-domain bath.
struct BathGridSpec {
  std::size_t n_polar = 8;
  std::size_t n_azimuth = 16;
  std::size_t n_freq = 301;
  double halfwidth_in_gamma = 25.0;
};

/// Direction grid plus a Gauss-Legendre frequency window of
/// +-halfwidth_in_gamma * Gamma centred on the spread of omega_+ over directions.
ModeGrid make_bath_grid(const Scenario& s, const BathGridSpec& spec);

struct FitWindow {
  double t_begin;
  double t_end;
};

/// [0.2, 1.0] / gamma
FitWindow decay_fit_window(double gamma);

/// -slope of ln|c_e|^2 over the window (least squares on the samples inside).
double fit_decay_rate(const Trajectory& traj, const FitWindow& window);

/// Least-squares slope of <P> against the excited-state clock
/// s(t) = int_0^t |c_e|^2 dt', i.e. the momentum rate per unit excited
/// population. In the rate-equation regime this equals the golden-rule drift.
Vec3 excited_momentum_rate(const Trajectory& traj, const FitWindow& window);

/// Least-squares slope of a sampled vector series over the window: the
/// window-averaged derivative, insensitive to oscillations that average out.
Vec3 series_slope(const std::vector<double>& t, const std::vector<Vec3>& x,
                  const FitWindow& window);

/// Plain least-squares slope of <P>(t) over the window.
Vec3 momentum_slope(const Trajectory& traj, const FitWindow& window);

/// Least-squares slope of <B x d>(t) over the window.
Vec3 roentgen_slope(const Trajectory& traj, const FitWindow& window);

/// Time average over the window of |dX/dt| from consecutive-sample differences.
double mean_rate_magnitude(const std::vector<double>& t, const std::vector<Vec3>& x,
                           const FitWindow& window);

}  // namespace vacfric
