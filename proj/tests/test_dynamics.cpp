// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vacfric/dynamics.hpp"
#include "vacfric/errors.hpp"
#include "vacfric/golden_rule.hpp"

using namespace vacfric;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Bath single_mode(double a, double detuning, Vec3 k = {0, 0, 1}, Vec3 b = {}, Vec3 p0 = {}) {
  Bath::ModeData m;
  m.rabi = a;
  m.g = 1.0;
  m.detuning = detuning;
  m.photon_momentum = k;
  m.b_vec = b;
  return Bath({m}, p0);
}

// A few hundred modes with random couplings and detunings.
Bath random_bath(std::uint64_t seed, std::size_t n) {
  oracle::Gen gen(seed);
  std::vector<Bath::ModeData> modes(n);
  for (auto& m : modes) {
    m.rabi = gen.uniform(-0.05, 0.05);
    m.g = gen.uniform(0.5, 1.5);
    m.detuning = gen.uniform(-2.0, 2.0);
    m.photon_momentum = gen.uniform(0.9, 1.1) * gen.unit_vector();
    m.b_vec = gen.ball(1.0);
  }
  return Bath(modes, {0.0, 0.0, 0.7});
}

const Scenario& default_scenario() {
  static const Scenario s = Scenario::from_small(0.1, unit_x, 1e-3, {0, 0, 1e-3});
  return s;
}

struct DefaultRun {
  ModeGrid grid;
  Trajectory traj;
  double gamma;
};

// Default bath over two lifetimes, shared by the cases that need it.
const DefaultRun& default_run() {
  static const DefaultRun run = [] {
    const Scenario& s = default_scenario();
    DefaultRun r;
    r.grid = make_bath_grid(s, {});
    r.gamma = decay_rate_closed(s);
    EvolveOptions o;
    o.t_end = 2.0 / r.gamma;
    o.dt_max = 1e-3 / r.gamma;
    o.sample_every = 10;
    r.traj = evolve(s, r.grid, o);
    return r;
  }();
  return run;
}

}  // namespace

TEST_CASE("zero coupling leaves the atom excited", "[kernels-sensitive]") {
  std::vector<Bath::ModeData> modes(37);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    modes[i].rabi = 0.0;
    modes[i].detuning = 0.1 * static_cast<double>(i);
    modes[i].photon_momentum = {1, 0, 0};
  }
  const Bath bath(modes, {0, 0, 1});
  EvolveOptions o;
  o.t_end = 50.0;
  o.dt_max = 0.05;
  const Trajectory tr = evolve(bath, o);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.population[i] == 1.0);
    CHECK(tr.momentum[i] == Vec3{0, 0, 1});
    CHECK(tr.roentgen[i] == Vec3{});
  }
}

TEST_CASE("single resonant mode performs Rabi oscillations", "[kernels-sensitive]") {
  const double a = 0.3;
  const Bath bath = single_mode(a, 0.0);
  EvolveOptions o;
  o.t_end = 40.0;
  o.dt_max = 1e-3;
  o.sample_every = 100;
  const Trajectory tr = evolve(bath, o);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double c = std::cos(a * tr.t[i]);
    CHECK_THAT(tr.population[i], WithinAbs(c * c, 1e-10));
    CHECK_THAT(tr.norm[i], WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("single detuned mode follows the generalized Rabi formula", "[kernels-sensitive]") {
  const double a = 0.2, delta = 0.5;
  const Bath bath = single_mode(a, delta);
  EvolveOptions o;
  o.t_end = 60.0;
  o.dt_max = 1e-3;
  o.sample_every = 250;
  const Trajectory tr = evolve(bath, o);
  const double w = std::sqrt(a * a + 0.25 * delta * delta);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double s = std::sin(w * tr.t[i]);
    CHECK_THAT(tr.population[i], WithinAbs(1.0 - a * a / (w * w) * s * s, 1e-10));
  }
}

TEST_CASE("single-mode momentum and Roentgen observables", "[kernels-sensitive]") {
  const double a = 0.25, delta = 0.3;
  const Vec3 k{0.2, -0.1, 0.9}, b{0.5, 0.1, -0.3}, p0{0, 0, 2};
  const Bath bath = single_mode(a, delta, k, b / a, p0);
  BathIntegrator integ(bath, 1e-3);
  for (int i = 0; i < 3000; ++i) integ.step();
  const AmplitudeState st = integ.state();
  // closed form for c_e and c_k of the two-level problem, long double
  const oracle::ld t = st.t, w = std::sqrt(oracle::ld(a) * a + 0.25L * delta * delta);
  const std::complex<oracle::ld> I(0, 1);
  const auto ce = std::exp(I * oracle::ld(delta) * t / 2.0L) *
                  (std::cos(w * t) - I * oracle::ld(delta) / (2.0L * w) * std::sin(w * t));
  const auto ck = -oracle::ld(a) / w * std::exp(-I * oracle::ld(delta) * t / 2.0L) * std::sin(w * t);
  CHECK_THAT(std::abs(st.c_e - cplx(ce)), WithinAbs(0.0, 1e-11));
  CHECK_THAT(std::abs(st.c_modes[0] - cplx(ck)), WithinAbs(0.0, 1e-11));
  const double nk = static_cast<double>(std::norm(ck));
  CHECK(norm(expect_P(st, bath) - (p0 - nk * k)) <= 1e-11);
  const auto z = ce * std::conj(ck) * std::exp(-I * oracle::ld(delta) * t);
  const Vec3 bxd = -2.0 * static_cast<double>(z.imag()) * b;
  CHECK(norm(expect_BxD(st, bath) - bxd) <= 1e-11);
}

TEST_CASE("kernel moments agree with the scalar observables", "[kernels-sensitive]") {
  const Bath bath = random_bath(71, 203);
  BathIntegrator integ(bath, 0.01, 64);
  const AmplitudeState s0 = integ.state();
  CHECK(expect_BxD(s0, bath) == Vec3{});
  CHECK(expect_P(s0, bath) == bath.p0());
  for (int i = 0; i < 777; ++i) integ.step();
  const AmplitudeState st = integ.state();
  const kernels::Moments m = integ.moments();
  double pop = 0.0;
  for (const cplx& c : st.c_modes) pop += std::norm(c);
  CHECK_THAT(m.population, WithinRel(pop, 1e-12));
  const double total = std::norm(st.c_e) + m.population;
  const Vec3 P = total * bath.p0() - Vec3{m.photon_momentum[0], m.photon_momentum[1], m.photon_momentum[2]};
  CHECK(norm(P - expect_P(st, bath)) <= 1e-12);
  const Vec3 bxd{-2.0 * std::imag(st.c_e * m.roentgen[0]), -2.0 * std::imag(st.c_e * m.roentgen[1]),
                 -2.0 * std::imag(st.c_e * m.roentgen[2])};
  // the integrator's phases are propagated by rotors; the reference takes exp directly
  CHECK(norm(bxd - expect_BxD(st, bath)) <= 1e-11);
}

TEST_CASE("trajectory samples agree with the integrator state", "[kernels-sensitive]") {
  const Bath bath = random_bath(73, 101);
  EvolveOptions o;
  o.t_end = 5.0;
  o.dt_max = 0.01;
  o.sample_every = 50;
  const Trajectory tr = evolve(bath, o);
  BathIntegrator integ(bath, 0.01, o.resync_every);
  for (int i = 0; i < 500; ++i) integ.step();
  const AmplitudeState st = integ.state();
  CHECK(tr.t.back() == st.t);
  CHECK(tr.population.back() == std::norm(st.c_e));
  CHECK(norm(tr.momentum.back() - expect_P(st, bath)) <= 1e-12);
  CHECK(norm(tr.roentgen.back() - expect_BxD(st, bath)) <= 1e-11);
  CHECK(tr.size() == 11);
}

TEST_CASE("phase resynchronization does not change the trajectory", "[kernels-sensitive]") {
  const Bath bath = random_bath(79, 64);
  BathIntegrator a(bath, 0.02, 1), b(bath, 0.02, 1000000);
  for (int i = 0; i < 2000; ++i) {
    a.step();
    b.step();
  }
  CHECK(std::abs(a.c_e() - b.c_e()) <= 1e-11);
}

TEST_CASE("step halving shrinks each change sixteenfold", "[kernels-sensitive]") {
  const Bath bath = random_bath(83, 120);
  struct Obs {
    double pop;
    Vec3 P, bxd;
  };
  auto run = [&](double dt) {
    EvolveOptions o;
    o.t_end = 8.0;
    o.dt_max = dt;
    o.sample_every = 1000000;
    const Trajectory tr = evolve(bath, o);
    return Obs{tr.population.back(), tr.momentum.back(), tr.roentgen.back()};
  };
  // detunings reach 2, so these steps span the default regime detuning * dt ~ 0.025
  const Obs a = run(0.02), b = run(0.01), c = run(0.005);
  const double d1 = std::abs(a.pop - b.pop), d2 = std::abs(b.pop - c.pop);
  REQUIRE(d1 > 1e-12);
  CHECK(d2 <= d1 / 15.0);
  CHECK(norm(b.P - c.P) <= norm(a.P - b.P) / 15.0);
  CHECK(norm(b.bxd - c.bxd) <= norm(a.bxd - b.bxd) / 15.0);
}

TEST_CASE("default bath tracks the exponential decay", "[kernels-sensitive]") {
  const DefaultRun& r = default_run();
  REQUIRE(r.grid.modes.size() == 8u * 16u * 301u * 2u);
  CHECK_FALSE(r.traj.recurrence_warning);
  CHECK(r.traj.recurrence_time > r.traj.t.back());
  double maxdev = 0.0;
  for (std::size_t i = 0; i < r.traj.size(); ++i) {
    maxdev = std::max(maxdev, std::abs(r.traj.population[i] - std::exp(-r.gamma * r.traj.t[i])));
  }
  CHECK(maxdev <= 0.05);
  for (double n : r.traj.norm) CHECK(std::abs(n - 1.0) <= 1e-8);
  const double fit = fit_decay_rate(r.traj, decay_fit_window(r.gamma));
  const double grid_rate = grid_golden_rule(default_scenario(), r.grid);
  CHECK(std::abs(fit - grid_rate) / grid_rate <= 0.05);
}

TEST_CASE("default bath drift per unit excited population", "[kernels-sensitive]") {
  const DefaultRun& r = default_run();
  const Vec3 rate = excited_momentum_rate(r.traj, decay_fit_window(r.gamma));
  const Vec3 ref = grid_golden_rule_drift(default_scenario(), r.grid);
  CHECK(norm(rate - ref) <= 0.05 * norm(ref));
  CHECK(rate.z < 0.0);
}

TEST_CASE("atom at rest acquires no momentum", "[kernels-sensitive]") {
  const Scenario s = Scenario::from_small(0.1, normalized(Vec3{1, 2, 2}), 1e-3, {});
  const ModeGrid grid = make_bath_grid(s, {4, 8, 61, 25.0});
  const double gamma = decay_rate_closed(s);
  EvolveOptions o;
  o.t_end = 1.0 / gamma;
  o.dt_max = 2e-3 / gamma;
  o.sample_every = 25;
  const Trajectory tr = evolve(s, grid, o);
  for (const Vec3& P : tr.momentum) CHECK(norm(P) <= 1e-10);
}

TEST_CASE("same-grid golden rule equals the direction quadrature") {
  const ModeGrid grid = build_mode_grid(direction_grid(16, 32), frequency_grid(1.0, 0.5, 9));
  const Vec3 e_d = normalized(Vec3{1, 0, 1});
  {
    const Scenario s = Scenario::from_small(1.0, e_d, 0.0, {});
    const double g = grid_golden_rule(s, grid);
    CHECK(std::abs(g - decay_rate_quadrature(s, grid.directions)) / g <= 1e-6);
    CHECK_THAT(g, WithinAbs(0.10610330, 5e-9));
  }
  // The grid rate squares the full coupling, the quadrature its first-order
  // reduction, so they part at second order in the small parameters.
  for (double x : {1e-4, 1e-3, 1e-2}) {
    const Scenario s = Scenario::from_small(1.0, e_d, x, {0, x, x});
    const double g = grid_golden_rule(s, grid);
    const double q = decay_rate_quadrature(s, grid.directions);
    CHECK(std::abs(g - q) / q <= 5 * x * x);
    if (x == 1e-4) CHECK(std::abs(g - q) / q <= 1e-6);
    const Vec3 gd = grid_golden_rule_drift(s, grid);
    const Vec3 qd = momentum_drift_quadrature(s, grid.directions);
    CHECK(norm(gd - qd) <= x * norm(qd));
  }
}

TEST_CASE("grid golden rule converges with the direction count") {
  const Scenario s = Scenario::from_small(1.0, normalized(Vec3{1, 2, 0}), 1e-2, {0.01, 0, 0.02});
  auto rate = [&](std::size_t np) {
    return grid_golden_rule(s, build_mode_grid(direction_grid(np, 2 * np), frequency_grid(1.0, 0.5, 3)));
  };
  const double r2 = rate(2), r4 = rate(4), r8 = rate(8), r16 = rate(16);
  CHECK(std::abs(r8 - r4) < std::abs(r4 - r2));
  CHECK(std::abs(r16 - r8) <= std::abs(r8 - r4));
  CHECK(std::abs(r16 - r8) / r16 <= 1e-12);
}

TEST_CASE("grid golden rule requires the resonance inside the window") {
  const Scenario s = Scenario::from_small(1.0, unit_x, 0.0, {});
  const ModeGrid grid = build_mode_grid(direction_grid(4, 8), frequency_grid(2.0, 0.5, 5));
  CHECK_THROWS_AS(grid_golden_rule(s, grid), DomainError);
}

TEST_CASE("decay fit recovers a synthetic rate") {
  Trajectory tr;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 0.01 * i;
    tr.t.push_back(t);
    tr.population.push_back(std::exp(-0.1 * t));
  }
  CHECK_THAT(fit_decay_rate(tr, decay_fit_window(0.1)), WithinAbs(0.1, 1e-12));
  CHECK_THROWS_AS(fit_decay_rate(tr, {30.0, 30.005}), FitWindowError);
}

TEST_CASE("decay fit rejects a revival in the window") {
  Trajectory tr;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 0.01 * i;
    const double c = std::cos(0.3 * t);
    tr.t.push_back(t);
    tr.population.push_back(c * c);
  }
  CHECK_THROWS_AS(fit_decay_rate(tr, decay_fit_window(0.1)), FitWindowError);
}

TEST_CASE("momentum rate per excited population on synthetic data") {
  Trajectory tr;
  const Vec3 rate{0.0, 1e-3, -2e-3};
  for (int i = 0; i <= 4000; ++i) {
    const double t = 0.005 * i;
    const double pop = std::exp(-0.1 * t);
    tr.t.push_back(t);
    tr.population.push_back(pop);
    // <P> = p0 + rate * int_0^t pop
    tr.momentum.push_back(Vec3{0, 0, 1} + ((1.0 - pop) / 0.1) * rate);
    tr.roentgen.push_back(Vec3{std::sin(40.0 * t), 0.0, 0.5 * t});
  }
  const FitWindow w = decay_fit_window(0.1);
  CHECK(norm(excited_momentum_rate(tr, w) - rate) <= 1e-8);
  // LS slope of a fast oscillation is small; the linear part comes through
  CHECK_THAT(roentgen_slope(tr, w).z, WithinAbs(0.5, 1e-12));
  CHECK(std::abs(roentgen_slope(tr, w).x) <= 1e-2);
  CHECK(mean_rate_magnitude(tr.t, tr.roentgen, w) > 20.0);
  const Vec3 slope = momentum_slope(tr, w);
  // plain slope carries the population factor: rate exp(-0.1 t) averaged over the window
  CHECK(slope.x == 0.0);
  CHECK(slope.z / rate.z < std::exp(-0.2));
  CHECK(slope.z / rate.z > std::exp(-1.0));
  CHECK_THAT(slope.y / rate.y, WithinRel(slope.z / rate.z, 1e-9));
}

TEST_CASE("integrator rejects unusable steps") {
  const Bath bath = single_mode(0.3, 0.0);
  CHECK_THROWS_AS(BathIntegrator(bath, 0.0), DomainError);
  CHECK_THROWS_AS(BathIntegrator(bath, -1.0), DomainError);
  EvolveOptions o;
  o.t_end = 0.0;
  o.dt_max = 0.1;
  CHECK_THROWS_AS(evolve(bath, o), DomainError);
  CHECK_THROWS_AS(evolve(Bath{}, EvolveOptions{1.0, 0.1}), DomainError);
}

TEST_CASE("large steps raise an integrator failure", "[kernels-sensitive]") {
  const Bath bath = single_mode(1.0, 0.0);
  EvolveOptions o;
  o.t_end = 20.0;
  o.dt_max = 2.0;
  CHECK_THROWS_AS(evolve(bath, o), IntegratorFailure);
}

TEST_CASE("recurrence time is flagged") {
  const Scenario s = Scenario::from_small(0.1, unit_x, 0.0, {});
  const ModeGrid grid = make_bath_grid(s, {2, 4, 11, 25.0});
  const double gamma = decay_rate_closed(s);
  CHECK_THAT(grid.recurrence_time(), WithinRel(2 * std::numbers::pi / grid.max_frequency_spacing(), 1e-15));
  EvolveOptions o;
  o.t_end = 1.5 * grid.recurrence_time();
  o.dt_max = 0.05 / gamma;
  o.norm_tolerance = 1e-3;
  const Trajectory tr = evolve(s, grid, o);
  CHECK(tr.recurrence_warning);
  CHECK(tr.recurrence_time == grid.recurrence_time());
}

TEST_CASE("bath grid needs room for the Doppler spread") {
  const Scenario s = Scenario::from_small(0.1, unit_x, 0.0, {0, 0, 0.05});
  CHECK_THROWS_AS(make_bath_grid(s, {4, 8, 31, 1.0}), DomainError);
  CHECK_NOTHROW(make_bath_grid(Scenario::from_small(0.1, unit_x, 0.0, {}), {4, 8, 31, 1.0}));
}
