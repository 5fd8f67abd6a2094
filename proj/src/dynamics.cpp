// SPDX-License-Identifier: Apache-2.0
#include "vacfric/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vacfric/coupling.hpp"
#include "vacfric/errors.hpp"
#include "vacfric/golden_rule.hpp"

namespace vacfric {

Bath::Bath(const std::vector<ModeData>& modes, const Vec3& p0) : p0_(p0) {
  const std::size_t n = modes.size();
  coupling_.reserve(n);
  detuning_.reserve(n);
  for (auto* v : {&kx_, &ky_, &kz_, &bx_, &by_, &bz_}) v->reserve(n);
  for (const ModeData& m : modes) {
    coupling_.push_back(m.rabi * m.g);
    detuning_.push_back(m.detuning);
    kx_.push_back(m.photon_momentum.x);
    ky_.push_back(m.photon_momentum.y);
    kz_.push_back(m.photon_momentum.z);
    bx_.push_back(m.rabi * m.b_vec.x);
    by_.push_back(m.rabi * m.b_vec.y);
    bz_.push_back(m.rabi * m.b_vec.z);
  }
}

Bath Bath::from_grid(const Scenario& s, const ModeGrid& grid) {
  s.validate();
  std::vector<ModeData> modes;
  modes.reserve(grid.modes.size());
  for (const Mode& m : grid.modes) {
    ModeData d;
    d.rabi = -std::sqrt(mode_coupling_weight(m, s));
    d.g = coupling_g(m, s.beta, s);
    d.detuning = vacfric::detuning(m, s);
    d.photon_momentum = m.omega * m.kappa;
    d.b_vec = b_vector(m, s.e_d);
    modes.push_back(d);
  }
  return Bath(modes, s.momentum());
}

kernels::BathView Bath::view(std::span<const double> rot_re, std::span<const double> rot_im) const {
  return {coupling_, rot_re, rot_im, kx_, ky_, kz_, bx_, by_, bz_};
}

double AmplitudeState::norm() const {
  double n = std::norm(c_e);
  for (const cplx& c : c_modes) n += std::norm(c);
  return n;
}

Vec3 expect_P(const AmplitudeState& state, const Bath& bath) {
  Vec3 emitted;
  double total = std::norm(state.c_e);
  for (std::size_t k = 0; k < bath.size(); ++k) {
    const double n = std::norm(state.c_modes[k]);
    total += n;
    emitted += n * bath.photon_momentum(k);
  }
  return total * bath.p0() - emitted;
}

Vec3 expect_BxD(const AmplitudeState& state, const Bath& bath) {
  cplx z[3];
  for (std::size_t k = 0; k < bath.size(); ++k) {
    const cplx q = std::conj(state.c_modes[k]) * std::polar(1.0, -bath.detuning(k) * state.t);
    const Vec3 b = bath.rabi_b(k);
    z[0] += b.x * q;
    z[1] += b.y * q;
    z[2] += b.z * q;
  }
  return {-2.0 * std::imag(state.c_e * z[0]), -2.0 * std::imag(state.c_e * z[1]),
          -2.0 * std::imag(state.c_e * z[2])};
}

BathIntegrator::BathIntegrator(const Bath& bath, double dt, std::size_t resync_every,
                               const kernels::KernelTable& table)
    : bath_(&bath), table_(&table), dt_(dt), resync_every_(std::max<std::size_t>(resync_every, 1)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("BathIntegrator: dt must be positive");
  const std::size_t n = bath.size();
  rot_re_.resize(n);
  rot_im_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = bath.coupling(k);
    const double angle = -0.5 * bath.detuning(k) * dt;
    rot_re_[k] = std::cos(angle);
    rot_im_[k] = std::sin(angle);
    coupling_sq_ += a * a;
    rotor_sum_ += a * a * cplx(rot_re_[k], -rot_im_[k]);
  }
  view_ = bath.view(rot_re_, rot_im_);
  c_re_.assign(n, 0.0);
  c_im_.assign(n, 0.0);
  ph_re_.assign(n, 1.0);
  ph_im_.assign(n, 0.0);
  resync();
}

void BathIntegrator::resync() {
  const double t = time();
  for (std::size_t k = 0; k < bath_->size(); ++k) {
    const double angle = -bath_->detuning(k) * t;
    ph_re_[k] = std::cos(angle);
    ph_im_[k] = std::sin(angle);
  }
  sums_ = table_->phase_sums(view_, {c_re_, c_im_, ph_re_, ph_im_});
}

void BathIntegrator::step() {
  const double h = dt_;
  const cplx ce1 = c_e_;
  const cplx k1 = sums_.at_start;
  const cplx ce2 = c_e_ + 0.5 * h * k1;
  const cplx k2 = sums_.at_half - 0.5 * h * ce1 * rotor_sum_;
  const cplx ce3 = c_e_ + 0.5 * h * k2;
  const cplx k3 = sums_.at_half - 0.5 * h * ce2 * coupling_sq_;
  const cplx ce4 = c_e_ + h * k3;
  const cplx k4 = sums_.at_end - h * ce3 * rotor_sum_;
  c_e_ += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  const kernels::UpdateWeights w{-(h / 6.0) * ce1, -(h / 3.0) * (ce2 + ce3), -(h / 6.0) * ce4};
  sums_ = table_->update(view_, {c_re_, c_im_, ph_re_, ph_im_}, w);
  ++steps_;
  if (steps_ % resync_every_ == 0) resync();
}

AmplitudeState BathIntegrator::state() const {
  AmplitudeState s;
  s.t = time();
  s.c_e = c_e_;
  s.c_modes.resize(c_re_.size());
  for (std::size_t k = 0; k < c_re_.size(); ++k) s.c_modes[k] = {c_re_[k], c_im_[k]};
  return s;
}

kernels::Moments BathIntegrator::moments() {
  return table_->moments(view_, {c_re_, c_im_, ph_re_, ph_im_});
}

namespace {

void record(Trajectory& traj, BathIntegrator& integ, const Bath& bath) {
  const kernels::Moments m = integ.moments();
  const cplx ce = integ.c_e();
  const double pop = std::norm(ce);
  const double total = pop + m.population;
  traj.t.push_back(integ.time());
  traj.population.push_back(pop);
  traj.norm.push_back(total);
  traj.momentum.push_back(total * bath.p0() -
                          Vec3{m.photon_momentum[0], m.photon_momentum[1], m.photon_momentum[2]});
  traj.roentgen.push_back({-2.0 * std::imag(ce * m.roentgen[0]),
                           -2.0 * std::imag(ce * m.roentgen[1]),
                           -2.0 * std::imag(ce * m.roentgen[2])});
}

}  // namespace

Trajectory evolve(const Bath& bath, const EvolveOptions& options) {
  if (bath.size() == 0) throw DomainError("evolve: empty bath");
  if (!(options.t_end > 0.0) || !(options.dt_max > 0.0)) {
    throw DomainError("evolve: t_end and dt_max must be positive");
  }
  const auto n_steps = static_cast<std::size_t>(std::ceil(options.t_end / options.dt_max));
  const double dt = options.t_end / static_cast<double>(n_steps);
  const std::size_t stride = std::max<std::size_t>(options.sample_every, 1);

  BathIntegrator integ(bath, dt, options.resync_every);
  Trajectory traj;
  traj.recurrence_time = options.recurrence_time;
  traj.recurrence_warning = options.recurrence_time > 0.0 && options.t_end > options.recurrence_time;
  record(traj, integ, bath);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    integ.step();
    if (i % stride == 0 || i == n_steps) {
      record(traj, integ, bath);
      if (std::abs(traj.norm.back() - 1.0) > options.norm_tolerance) {
        throw IntegratorFailure("evolve: norm drift " + std::to_string(traj.norm.back() - 1.0) +
                                " at t = " + std::to_string(integ.time()));
      }
    }
  }
  return traj;
}

Trajectory evolve(const Scenario& s, const ModeGrid& grid, EvolveOptions options) {
  if (grid.modes.empty()) throw DomainError("evolve: empty grid");
  options.recurrence_time = grid.recurrence_time();
  return evolve(Bath::from_grid(s, grid), options);
}

namespace {

template <typename T, typename Term>
T grid_direction_sum(const Scenario& s, const ModeGrid& grid, Term&& term) {
  if (grid.frequencies.empty() || grid.directions.size() == 0) {
    throw DomainError("grid_golden_rule: empty grid");
  }
  const double lo = grid.frequencies.front().omega;
  const double hi = grid.frequencies.back().omega;
  T sum{};
  for (const DirectionNode& dir : grid.directions.nodes()) {
    const RadialReduction r = omega_plus(dir.kappa, s);
    if (r.omega_plus < lo || r.omega_plus > hi) {
      throw DomainError("grid_golden_rule: omega_+ outside the frequency window");
    }
    const PolarizationBasis pol = polarization_basis(dir.kappa);
    for (int lambda = 1; lambda <= 2; ++lambda) {
      Mode m;
      m.kappa = dir.kappa;
      m.omega = r.omega_plus;
      m.lambda = lambda;
      m.eps = pol[lambda];
      const double g = coupling_g(m, s.beta, s);
      const double rate = 2.0 * std::numbers::pi * dir.weight * coupling_density(r.omega_plus, s.d) *
                          g * g / r.jacobian;
      sum += term(rate, r.omega_plus, dir.kappa);
    }
  }
  return sum;
}

}  // namespace

double grid_golden_rule(const Scenario& s, const ModeGrid& grid) {
  return grid_direction_sum<double>(s, grid, [](double rate, double, const Vec3&) { return rate; });
}

Vec3 grid_golden_rule_drift(const Scenario& s, const ModeGrid& grid) {
  return -grid_direction_sum<Vec3>(
      s, grid, [](double rate, double omega, const Vec3& kappa) { return (rate * omega) * kappa; });
}

ModeGrid make_bath_grid(const Scenario& s, const BathGridSpec& spec) {
  DirectionGrid dirs = direction_grid(spec.n_polar, spec.n_azimuth);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const DirectionNode& n : dirs.nodes()) {
    const double w = omega_plus(n.kappa, s).omega_plus;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  const double halfwidth = spec.halfwidth_in_gamma * decay_rate_closed(s);
  if (!(halfwidth > 0.5 * (hi - lo))) {
    throw DomainError("make_bath_grid: frequency window narrower than the Doppler spread");
  }
  return build_mode_grid(std::move(dirs), frequency_grid(0.5 * (lo + hi), halfwidth, spec.n_freq));
}

FitWindow decay_fit_window(double gamma) { return {0.2 / gamma, 1.0 / gamma}; }

namespace {

std::vector<std::size_t> window_indices(const std::vector<double>& t, const FitWindow& w) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= w.t_begin && t[i] <= w.t_end) idx.push_back(i);
  }
  if (idx.size() < 3) throw FitWindowError("fit window holds fewer than three samples");
  return idx;
}

// Least-squares slope of y against x over the given indices.
template <typename Y, typename X>
Y ls_slope(const std::vector<std::size_t>& idx, X&& xs, const std::vector<Y>& y) {
  double mx = 0.0;
  Y my{};
  for (std::size_t i : idx) {
    mx += xs(i);
    my += y[i];
  }
  const double n = static_cast<double>(idx.size());
  mx /= n;
  my = my * (1.0 / n);
  double sxx = 0.0;
  Y sxy{};
  for (std::size_t i : idx) {
    const double dx = xs(i) - mx;
    sxx += dx * dx;
    sxy += (y[i] - my) * dx;
  }
  if (!(sxx > 0.0)) throw FitWindowError("degenerate fit abscissa");
  return sxy * (1.0 / sxx);
}

}  // namespace

double fit_decay_rate(const Trajectory& traj, const FitWindow& window) {
  const auto idx = window_indices(traj.t, window);
  std::vector<double> logs(traj.size(), 0.0);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    if (!(traj.population[i] > 0.0)) throw FitWindowError("population not positive in window");
    if (k > 0 && traj.population[i] > traj.population[idx[k - 1]]) {
      throw FitWindowError("population not monotone in fit window (recurrence?)");
    }
    logs[i] = std::log(traj.population[i]);
  }
  return -ls_slope(idx, [&](std::size_t i) { return traj.t[i]; }, logs);
}

Vec3 excited_momentum_rate(const Trajectory& traj, const FitWindow& window) {
  const auto idx = window_indices(traj.t, window);
  std::vector<double> clock(traj.size(), 0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    clock[i] = clock[i - 1] +
               0.5 * (traj.population[i] + traj.population[i - 1]) * (traj.t[i] - traj.t[i - 1]);
  }
  return ls_slope(idx, [&](std::size_t i) { return clock[i]; }, traj.momentum);
}

Vec3 series_slope(const std::vector<double>& t, const std::vector<Vec3>& x,
                  const FitWindow& window) {
  const auto idx = window_indices(t, window);
  return ls_slope(idx, [&](std::size_t i) { return t[i]; }, x);
}

Vec3 momentum_slope(const Trajectory& traj, const FitWindow& window) {
  return series_slope(traj.t, traj.momentum, window);
}

Vec3 roentgen_slope(const Trajectory& traj, const FitWindow& window) {
  return series_slope(traj.t, traj.roentgen, window);
}

double mean_rate_magnitude(const std::vector<double>& t, const std::vector<Vec3>& x,
                           const FitWindow& window) {
  const auto idx = window_indices(t, window);
  double total = 0.0;
  double span = 0.0;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const std::size_t i = idx[k - 1];
    const std::size_t j = idx[k];
    const double dt = t[j] - t[i];
    total += norm(x[j] - x[i]);
    span += dt;
  }
  return total / span;
}

}  // namespace vacfric
