// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vacfric/cli.hpp"
#include "vacfric/errors.hpp"

namespace vacfric::cli {

namespace {

std::string describe(const std::string& source, std::size_t line, const std::string& field,
                     const std::string& what) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line;
  if (!field.empty()) os << ": " << field;
  os << ": " << what;
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Whitespace- or comma-separated tokens.
std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

struct Context {
  const std::string& source;
  std::size_t line;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(source, line, key, what); }
};

double parse_double(std::string_view tok, const Context& ctx) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    ctx.fail("expected a number, got '" + std::string(tok) + "'");
  }
  if (!std::isfinite(x)) ctx.fail("value must be finite");
  return x;
}

double parse_scalar(std::string_view value, const Context& ctx) {
  const auto t = tokens(value);
  if (t.size() != 1) ctx.fail("expected one number");
  return parse_double(t[0], ctx);
}

Vec3 parse_vec3(std::string_view value, const Context& ctx) {
  const auto t = tokens(value);
  if (t.size() != 3) ctx.fail("expected three numbers");
  return {parse_double(t[0], ctx), parse_double(t[1], ctx), parse_double(t[2], ctx)};
}

std::vector<double> parse_list(std::string_view value, const Context& ctx) {
  std::vector<double> out;
  for (auto tok : tokens(value)) out.push_back(parse_double(tok, ctx));
  if (out.empty()) ctx.fail("expected at least one number");
  return out;
}

std::size_t parse_count(std::string_view value, std::size_t minimum, const Context& ctx) {
  const auto t = tokens(value);
  if (t.size() != 1) ctx.fail("expected one integer");
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(t[0].data(), t[0].data() + t[0].size(), n);
  if (ec != std::errc{} || ptr != t[0].data() + t[0].size()) {
    ctx.fail("expected a non-negative integer, got '" + std::string(t[0]) + "'");
  }
  if (n < minimum) ctx.fail("must be at least " + std::to_string(minimum));
  return n;
}

bool parse_bool(std::string_view value, const Context& ctx) {
  const std::string_view v = trim(value);
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  ctx.fail("expected true or false");
}

double positive(double x, const Context& ctx) {
  if (!(x > 0.0)) ctx.fail("must be positive");
  return x;
}

double non_negative(double x, const Context& ctx) {
  if (!(x >= 0.0)) ctx.fail("must be non-negative");
  return x;
}

}  // namespace

ConfigError::ConfigError(std::string source, std::size_t line, std::string field,
                         const std::string& what)
    : std::runtime_error(describe(source, line, field, what)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

void apply_setting(RunConfig& c, std::string_view key_in, std::string_view value,
                   const std::string& source, std::size_t line) {
  const std::string key(trim(key_in));
  const Context ctx{source, line, key};
  value = trim(value);
  if (value.empty()) ctx.fail("missing value");

  if (key == "units") {
    if (value == "natural") {
      c.units = UnitSystem::natural;
    } else if (value == "si") {
      c.units = UnitSystem::si;
    } else {
      ctx.fail("expected natural or si");
    }
  } else if (key == "omega_A") {
    c.omega_A = positive(parse_scalar(value, ctx), ctx);
  } else if (key == "dipole") {
    c.dipole = parse_vec3(value, ctx);
  } else if (key == "mass") {
    c.mass = positive(parse_scalar(value, ctx), ctx);
  } else if (key == "p0") {
    c.p0 = parse_vec3(value, ctx);
  } else if (key == "epsilon") {
    c.epsilon = non_negative(parse_scalar(value, ctx), ctx);
  } else if (key == "beta") {
    const Vec3 b = parse_vec3(value, ctx);
    if (!(norm(b) < 1.0)) ctx.fail("|beta| must be below 1");
    c.beta = b;
  } else if (key == "roentgen") {
    c.roentgen = parse_bool(value, ctx);
  } else if (key == "grid_polar") {
    c.n_polar = parse_count(value, 2, ctx);
  } else if (key == "grid_azimuth") {
    c.n_azimuth = parse_count(value, 4, ctx);
  } else if (key == "grid_freq") {
    c.n_freq = parse_count(value, 2, ctx);
  } else if (key == "freq_halfwidth") {
    c.freq_halfwidth = positive(parse_scalar(value, ctx), ctx);
  } else if (key == "t_end") {
    c.t_end = positive(parse_scalar(value, ctx), ctx);
  } else if (key == "dt") {
    c.dt = positive(parse_scalar(value, ctx), ctx);
  } else if (key == "stride") {
    c.stride = parse_count(value, 1, ctx);
  } else if (key == "oracle_p") {
    c.oracle_p = parse_vec3(value, ctx);
  } else if (key == "emitter_omega0") {
    c.emitter_omega0 = positive(parse_scalar(value, ctx), ctx);
  } else if (key == "emitter_velocities") {
    c.emitter_velocities = parse_list(value, ctx);
    for (double v : c.emitter_velocities) {
      if (!(std::abs(v) < 1.0)) ctx.fail("velocities must satisfy |v/c| < 1");
    }
  } else if (key == "sweep_epsilon") {
    c.sweep_epsilon = parse_list(value, ctx);
    for (double e : c.sweep_epsilon) non_negative(e, ctx);
  } else if (key == "sweep_beta") {
    c.sweep_beta = parse_list(value, ctx);
    for (double b : c.sweep_beta) {
      if (!(b >= 0.0 && b < 1.0)) ctx.fail("entries must lie in [0, 1)");
    }
  } else if (key == "sweep_direction") {
    const Vec3 v = parse_vec3(value, ctx);
    if (!(norm(v) > 0.0)) ctx.fail("direction must be nonzero");
    c.sweep_direction = normalized(v);
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "format") {
    if (value != "csv") ctx.fail("only csv is supported");
    c.format = std::string(value);
  } else if (key == "si_output") {
    c.si_output = parse_bool(value, ctx);
  } else {
    ctx.fail("unknown key");
  }
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  RunConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source, line_no, std::string(tokens(line).front()), "expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source, line_no, "", "missing key before '='");
    apply_setting(c, key, line.substr(eq + 1), source, line_no);
  }
  // Overrides from flags may combine these; within one file they conflict.
  if (c.epsilon && c.mass) throw ConfigError(source, 0, "mass", "give either epsilon or mass, not both");
  if (c.beta && c.p0) throw ConfigError(source, 0, "p0", "give either beta or p0, not both");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "", "cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

void RunConfig::validate() const {
  const std::string src = "<config>";
  if (units == UnitSystem::si) {
    if (!omega_A) throw ConfigError(src, 0, "omega_A", "required when units = si");
    if (!dipole) throw ConfigError(src, 0, "dipole", "required when units = si");
    if (!mass) throw ConfigError(src, 0, "mass", "required when units = si");
  }
  if (p0 && !mass) throw ConfigError(src, 0, "p0", "p0 needs mass");
  if (n_azimuth && *n_azimuth % 2 != 0) {
    throw ConfigError(src, 0, "grid_azimuth", "must be even");
  }
  if (si_output && units != UnitSystem::si) {
    throw ConfigError(src, 0, "si_output", "needs the atom given with units = si");
  }
}

ResolvedScenario resolve_scenario(const RunConfig& c, const Vec3& default_dipole) {
  c.validate();
  const Vec3 dip = c.dipole.value_or(default_dipole);
  const double d = norm(dip);
  const Vec3 e_d = d > 0.0 ? normalized(dip) : unit_x;

  ResolvedScenario r;
  if (c.mass) {
    AtomParams atom;
    atom.unit_system = c.units;
    atom.omega_A = c.omega_A.value_or(1.0);
    atom.d = d;
    atom.e_d = e_d;
    atom.M = *c.mass;
    atom.p0 = c.p0.value_or(Vec3{});
    try {
      r.scenario = Scenario::from_atom(atom);
    } catch (const DomainError& e) {
      throw ConfigError("<config>", 0, "atom", e.what());
    }
    r.scenario.e_d = e_d;
    if (c.epsilon) r.scenario.epsilon = *c.epsilon;
    if (c.beta) r.scenario.beta = *c.beta;
    if (c.units == UnitSystem::si) r.atom = atom;
  } else {
    if (c.omega_A && *c.omega_A != 1.0) {
      throw ConfigError("<config>", 0, "omega_A", "natural units fix omega_A = 1 unless mass is given");
    }
    r.scenario.d = d;
    r.scenario.e_d = e_d;
    r.scenario.epsilon = c.epsilon.value_or(0.0);
    r.scenario.beta = c.beta.value_or(Vec3{});
  }
  r.scenario.roentgen = c.roentgen;
  try {
    r.scenario.validate();
  } catch (const DomainError& e) {
    throw ConfigError("<config>", 0, "scenario", e.what());
  }
  return r;
}

}  // namespace vacfric::cli
