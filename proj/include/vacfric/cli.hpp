// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vacfric/core_scales.hpp"
#include "vacfric/vec3.hpp"

namespace vacfric::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_failure = 3;

/// Bad configuration input. line is 0 for command-line flags and for errors
/// that concern the configuration as a whole.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, std::size_t line, std::string field, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

/// Everything a subcommand needs. Unset optionals fall back to the
/// subcommand's own default.
struct RunConfig {
  // Atom. With units = natural the scenario is either (epsilon, beta) or
  // (mass, p0) together with omega_A; with units = si the atom block is
  // mandatory and given in SI (rad/s, C m, kg, kg m/s).
  UnitSystem units = UnitSystem::natural;
  std::optional<double> omega_A;
  std::optional<Vec3> dipole;
  std::optional<double> mass;
  std::optional<Vec3> p0;
  std::optional<double> epsilon;
  std::optional<Vec3> beta;
  bool roentgen = true;

  // Grids.
  std::optional<std::size_t> n_polar;
  std::optional<std::size_t> n_azimuth;
  std::size_t n_freq = 301;
  double freq_halfwidth = 25.0;  // in units of Gamma

  // Time evolution, in units of 1/Gamma.
  double t_end = 2.0;
  double dt = 1e-3;
  std::size_t stride = 10;

  // Angular-integral probe momentum.
  Vec3 oracle_p = unit_z;

  // Two-way emitter.
  double emitter_omega0 = 1.0;
  std::vector<double> emitter_velocities{0.0, 1e-6, 0.01, 0.1, 0.5};

  // Regime scan. beta points along sweep_direction.
  std::vector<double> sweep_epsilon{0.0, 1e-4, 1e-3, 1e-2};
  std::vector<double> sweep_beta{0.0, 1e-4, 1e-3, 1e-2};
  Vec3 sweep_direction = unit_z;

  std::string out;
  std::string format = "csv";
  bool si_output = false;

  /// Cross-field checks (the parser checks individual values).
  void validate() const;
};

/// key = value lines; '#' starts a comment. Later keys overwrite earlier ones.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Applies one key = value pair; the parser and the flag layer share this.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::string& source, std::size_t line);

/// Resolved scenario plus, for SI input, the physical atom it came from.
struct ResolvedScenario {
  Scenario scenario;
  std::optional<AtomParams> atom;
};

/// Builds the engine scenario. default_dipole applies when no dipole is set.
ResolvedScenario resolve_scenario(const RunConfig& config, const Vec3& default_dipole = unit_x);

/// CSV payload plus a human-readable summary; the CSV is the reproducible
/// artifact.
struct CommandOutput {
  std::string csv;
  std::string summary;
  std::vector<std::string> warnings;
};

CommandOutput cmd_decay_rate(const RunConfig& config);
CommandOutput cmd_drift(const RunConfig& config);
CommandOutput cmd_evolve(const RunConfig& config);
CommandOutput cmd_oracles(const RunConfig& config);
CommandOutput cmd_emitter(const RunConfig& config);
CommandOutput cmd_sweep(const RunConfig& config);

/// %.17g
std::string format_number(double x);

/// Full command line entry point. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vacfric::cli
