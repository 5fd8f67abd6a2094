// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vacfric/cli.hpp"
#include "vacfric/dynamics.hpp"
#include "vacfric/errors.hpp"
#include "vacfric/golden_rule.hpp"
#include "vacfric/mode_bath.hpp"
#include "vacfric/relativity.hpp"

namespace vacfric::cli {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0" in the output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

constexpr std::size_t quad_polar = 16;
constexpr std::size_t quad_azimuth = 32;
// A +-25 Gamma window must stay clear of omega = 0, so the time-domain
// default keeps Gamma well below omega_A.
const Vec3 evolve_default_dipole{0.1, 0.0, 0.0};

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) os_ << ',';
      os_ << h;
      first = false;
    }
    os_ << '\n';
  }

  CsvWriter& operator<<(double x) {
    sep();
    os_ << format_number(x);
    return *this;
  }
  CsvWriter& operator<<(const Vec3& v) { return *this << v.x << v.y << v.z; }
  CsvWriter& operator<<(const std::string& s) {
    sep();
    os_ << s;
    return *this;
  }
  void end_row() {
    os_ << '\n';
    fresh_ = true;
  }
  std::string str() const { return os_.str(); }

 private:
  void sep() {
    if (!fresh_) os_ << ',';
    fresh_ = false;
  }
  std::ostringstream os_;
  bool fresh_ = true;
};

// Conversion of natural-unit outputs at the boundary.
struct OutputScales {
  double rate = 1.0;
  double time = 1.0;
  double momentum = 1.0;
  double force = 1.0;
};

OutputScales output_scales(const RunConfig& c, const ResolvedScenario& r) {
  OutputScales o;
  if (!c.si_output || !r.atom) return o;
  const NaturalScales n = natural_scales(*r.atom);
  o.rate = n.frequency;
  o.time = n.time;
  o.momentum = n.momentum;
  o.force = n.momentum * n.frequency;
  return o;
}

DirectionGrid quad_grid(const RunConfig& c) {
  return direction_grid(c.n_polar.value_or(quad_polar), c.n_azimuth.value_or(quad_azimuth));
}

std::string unit_note(const RunConfig& c) { return c.si_output ? " (SI)" : " (natural units)"; }

}  // namespace

CommandOutput cmd_decay_rate(const RunConfig& c) {
  const ResolvedScenario r = resolve_scenario(c);
  const Scenario& s = r.scenario;
  const OutputScales k = output_scales(c, r);
  const DecayReport rep = decay_report(s, quad_grid(c));

  CsvWriter csv{"epsilon", "beta_x", "beta_y", "beta_z", "gamma_quad", "gamma_closed", "rel_dev"};
  csv << s.epsilon << s.beta << rep.gamma_quad * k.rate << rep.gamma_closed * k.rate
      << rep.rel_dev_gamma;
  csv.end_row();

  CommandOutput out;
  out.csv = csv.str();
  out.summary = "gamma_quad = " + format_number(rep.gamma_quad * k.rate) +
                "\ngamma_closed = " + format_number(rep.gamma_closed * k.rate) +
                "\nrel_dev = " + format_number(rep.rel_dev_gamma) + unit_note(c) + "\n";
  return out;
}

CommandOutput cmd_drift(const RunConfig& c) {
  const ResolvedScenario r = resolve_scenario(c);
  const Scenario& s = r.scenario;
  const OutputScales k = output_scales(c, r);
  const DecayReport rep = decay_report(s, quad_grid(c));

  CsvWriter csv{"epsilon",       "beta_x",        "beta_y",        "beta_z",
                "drift_quad_x",  "drift_quad_y",  "drift_quad_z",  "drift_closed_x",
                "drift_closed_y", "drift_closed_z", "rel_dev"};
  csv << s.epsilon << s.beta << rep.drift_quad * k.force << rep.drift_closed * k.force
      << rep.rel_dev_drift;
  csv.end_row();

  const Vec3 q = rep.drift_quad * k.force;
  const Vec3 cl = rep.drift_closed * k.force;
  CommandOutput out;
  out.csv = csv.str();
  out.summary = "drift_quad = (" + format_number(q.x) + ", " + format_number(q.y) + ", " +
                format_number(q.z) + ")\ndrift_closed = (" + format_number(cl.x) + ", " +
                format_number(cl.y) + ", " + format_number(cl.z) + ")\nrel_dev = " +
                format_number(rep.rel_dev_drift) + unit_note(c) + "\n";
  return out;
}

CommandOutput cmd_evolve(const RunConfig& c) {
  const ResolvedScenario r = resolve_scenario(c, evolve_default_dipole);
  const Scenario& s = r.scenario;
  const OutputScales k = output_scales(c, r);

  BathGridSpec spec;
  if (c.n_polar) spec.n_polar = *c.n_polar;
  if (c.n_azimuth) spec.n_azimuth = *c.n_azimuth;
  spec.n_freq = c.n_freq;
  spec.halfwidth_in_gamma = c.freq_halfwidth;
  const ModeGrid grid = make_bath_grid(s, spec);
  const double gamma = grid_golden_rule(s, grid);

  EvolveOptions opts;
  opts.t_end = c.t_end / gamma;
  opts.dt_max = c.dt / gamma;
  opts.sample_every = c.stride;
  const Trajectory tr = evolve(s, grid, opts);

  CsvWriter csv{"t", "pop", "Px", "Py", "Pz", "BxDx", "BxDy", "BxDz", "norm"};
  for (std::size_t i = 0; i < tr.size(); ++i) {
    csv << tr.t[i] * k.time << tr.population[i] << tr.momentum[i] * k.momentum
        << tr.roentgen[i] * k.momentum << tr.norm[i];
    csv.end_row();
  }

  CommandOutput out;
  out.csv = csv.str();
  std::ostringstream sum;
  sum << "modes = " << grid.modes.size() << "\ngamma_grid = " << format_number(gamma * k.rate)
      << "\ngamma_closed = " << format_number(decay_rate_closed(s) * k.rate);
  try {
    const double fit = fit_decay_rate(tr, decay_fit_window(gamma));
    sum << "\ngamma_fit = " << format_number(fit * k.rate);
  } catch (const FitWindowError& e) {
    out.warnings.push_back(std::string("decay fit skipped: ") + e.what());
  }
  sum << "\nrecurrence_time = " << format_number(tr.recurrence_time * k.time) << unit_note(c)
      << "\n";
  out.summary = sum.str();
  if (tr.recurrence_warning) {
    out.warnings.push_back("t_end exceeds the bath recurrence time " +
                           format_number(tr.recurrence_time * k.time));
  }
  return out;
}

CommandOutput cmd_oracles(const RunConfig& c) {
  const ResolvedScenario r = resolve_scenario(c);
  const AngularOracles o = angular_oracles(quad_grid(c), r.scenario.dipole(), c.oracle_p);

  CsvWriter csv{"integral", "component", "quadrature", "exact", "abs_dev"};
  auto row = [&](const char* name, const char* comp, double q, double e) {
    csv << std::string(name) << std::string(comp) << q << e << std::abs(q - e);
    csv.end_row();
  };
  row("transverse", "scalar", o.transverse_quad, o.transverse_exact);
  const char* axes[] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) row("doppler", axes[i], o.doppler_quad[i], o.doppler_exact[i]);
  for (int i = 0; i < 3; ++i) row("roentgen", axes[i], o.roentgen_quad[i], o.roentgen_exact[i]);

  CommandOutput out;
  out.csv = csv.str();
  out.summary = "max_abs_deviation = " + format_number(o.max_abs_deviation()) + "\n";
  if (c.si_output) out.warnings.push_back("angular integrals are reported in natural units");
  return out;
}

CommandOutput cmd_emitter(const RunConfig& c) {
  c.validate();
  const UnitSystem units = c.units;
  const double kc = constants(units).c;

  CsvWriter csv{"v_over_c", "gamma", "omega_l", "omega_r", "dE", "dp", "dE_v_over_c2"};
  for (double v : c.emitter_velocities) {
    const EmitterScenario e = make_emitter(c.emitter_omega0, v, units);
    csv << v << e.gamma << e.omega_l << e.omega_r << e.dE << e.dp << e.dE * (v * kc) / (kc * kc);
    csv.end_row();
  }

  const ResolvedScenario r = resolve_scenario(c);
  const FrictionConsistency fc =
      r.atom ? friction_consistency(*r.atom) : friction_consistency(r.scenario);
  const double dm = r.atom ? mass_rate(rest_decay_rate(r.scenario) * r.atom->omega_A,
                                       r.atom->omega_A, UnitSystem::si)
                           : mass_rate(rest_decay_rate(r.scenario), 1.0);
  CommandOutput out;
  out.csv = csv.str();
  out.summary = "mass_rate = " + format_number(dm) +
                "\nfriction_consistency_deviation = " + format_number(fc.deviation) + "\n";
  return out;
}

CommandOutput cmd_sweep(const RunConfig& c) {
  const ResolvedScenario base = resolve_scenario(c);
  const OutputScales k = output_scales(c, base);
  const DirectionGrid grid = quad_grid(c);

  CsvWriter csv{"epsilon",        "beta",           "gamma_quad",     "gamma_closed",
                "rel_dev_gamma",  "drift_quad_x",   "drift_quad_y",   "drift_quad_z",
                "drift_closed_x", "drift_closed_y", "drift_closed_z", "rel_dev_drift"};
  std::size_t rows = 0;
  for (double eps : c.sweep_epsilon) {
    for (double b : c.sweep_beta) {
      Scenario s = base.scenario;
      s.epsilon = eps;
      s.beta = b * c.sweep_direction;
      s.validate();
      const DecayReport rep = decay_report(s, grid);
      csv << eps << b << rep.gamma_quad * k.rate << rep.gamma_closed * k.rate << rep.rel_dev_gamma
          << rep.drift_quad * k.force << rep.drift_closed * k.force << rep.rel_dev_drift;
      csv.end_row();
      ++rows;
    }
  }
  CommandOutput out;
  out.csv = csv.str();
  out.summary = "rows = " + std::to_string(rows) + unit_note(c) + "\n";
  return out;
}

namespace {

struct Flags {
  std::string config, out;
  std::string grid_polar, grid_azimuth, grid_freq, halfwidth;
  std::string epsilon, t_end, dt, stride, omega0;
  std::vector<std::string> beta, dipole, velocity, sweep_epsilon, sweep_beta;
  bool si = false;
  bool no_roentgen = false;
};

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += ' ';
    s += p;
  }
  return s;
}

RunConfig assemble(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  const std::string src = "<command line>";
  auto set = [&](const char* key, const std::string& value) {
    if (!value.empty()) apply_setting(c, key, value, src, 0);
  };
  set("grid_polar", f.grid_polar);
  set("grid_azimuth", f.grid_azimuth);
  set("grid_freq", f.grid_freq);
  set("freq_halfwidth", f.halfwidth);
  set("epsilon", f.epsilon);
  set("t_end", f.t_end);
  set("dt", f.dt);
  set("stride", f.stride);
  set("emitter_omega0", f.omega0);
  set("beta", join(f.beta));
  set("dipole", join(f.dipole));
  set("emitter_velocities", join(f.velocity));
  set("sweep_epsilon", join(f.sweep_epsilon));
  set("sweep_beta", join(f.sweep_beta));
  set("out", f.out);
  if (f.si) c.si_output = true;
  if (f.no_roentgen) c.roentgen = false;
  c.validate();
  return c;
}

void emit(const RunConfig& c, const CommandOutput& result, std::ostream& out, std::ostream& err) {
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (c.out.empty()) {
    out << result.csv;
    err << result.summary;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError(c.out, 0, "out", "cannot open output file");
  f << result.csv;
  f.close();
  if (!f) throw ConfigError(c.out, 0, "out", "write failed");
  out << result.summary;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spontaneous emission and vacuum friction of a moving two-level atom", "vacfric"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "key = value configuration file");
  app.add_option("--out", f.out, "write the CSV here instead of stdout");
  app.add_option("--grid-polar", f.grid_polar, "Gauss-Legendre nodes in cos(theta)");
  app.add_option("--grid-azimuth", f.grid_azimuth, "azimuthal nodes (even)");
  app.add_option("--grid-freq", f.grid_freq, "frequency nodes of the time-domain bath");
  app.add_option("--halfwidth", f.halfwidth, "frequency half-window in units of Gamma");
  app.add_option("--epsilon", f.epsilon, "recoil parameter hbar omega_A / (M c^2)");
  app.add_option("--beta", f.beta, "initial velocity p0 / (M c)")->expected(3);
  app.add_option("--dipole", f.dipole, "dipole vector")->expected(3);
  app.add_option("--t-end", f.t_end, "evolution time in units of 1/Gamma");
  app.add_option("--dt", f.dt, "largest time step in units of 1/Gamma");
  app.add_option("--stride", f.stride, "samples every this many steps");
  app.add_option("--omega0", f.omega0, "emitter rest frequency");
  app.add_option("--velocity", f.velocity, "emitter velocities v/c")->expected(1, 64);
  app.add_option("--sweep-epsilon", f.sweep_epsilon, "epsilon values of the scan")->expected(1, 64);
  app.add_option("--sweep-beta", f.sweep_beta, "|beta| values of the scan")->expected(1, 64);
  app.add_flag("--si", f.si, "report results in SI (needs units = si in the config)");
  app.add_flag("--no-roentgen", f.no_roentgen, "drop the B x d coupling");

  using Command = CommandOutput (*)(const RunConfig&);
  Command selected = nullptr;
  auto sub = [&](const char* name, const char* help, Command cmd) {
    app.add_subcommand(name, help)->callback([&selected, cmd] { selected = cmd; });
  };
  sub("decay-rate", "golden-rule decay rate, quadrature and closed form", cmd_decay_rate);
  sub("drift", "canonical-momentum drift, quadrature and closed form", cmd_drift);
  sub("evolve", "time-domain amplitude integration on a discrete bath", cmd_evolve);
  sub("oracles", "angular integrals against their analytic values", cmd_oracles);
  sub("emitter", "Doppler pair and energy-momentum balance of a two-way emitter", cmd_emitter);
  sub("sweep", "decay rate and drift over an (epsilon, |beta|) lattice", cmd_sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config_error;
  }

  try {
    const RunConfig config = assemble(f);
    emit(config, selected(config), out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_config_error;
  } catch (const IntegratorFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical_failure;
  } catch (const FitWindowError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical_failure;
  }
  return exit_ok;
}

}  // namespace vacfric::cli
