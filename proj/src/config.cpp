#include "bogo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "bogo/errors.hpp"

namespace bogo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
  double x = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("field '" + key + "': expected a finite number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("field '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("field '" + key + "': expected true or false, got '" + v + "'");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario", [](RunConfig& c, const std::string&, const std::string& v) { c.scenario = v; }},
      {"bc",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         try {
           c.bc = parse_boundary_condition(v);
         } catch (const Error&) {
           throw ConfigError("field '" + k + "': expected dirichlet or neumann, got '" + v + "'");
         }
       }},
      {"mass", [](RunConfig& c, const std::string& k, const std::string& v) { c.mass = to_real(k, v); }},
      {"length", [](RunConfig& c, const std::string& k, const std::string& v) { c.length = to_real(k, v); }},
      {"lx", [](RunConfig& c, const std::string& k, const std::string& v) { c.lx = to_real(k, v); }},
      {"ly", [](RunConfig& c, const std::string& k, const std::string& v) { c.ly = to_real(k, v); }},
      {"lz", [](RunConfig& c, const std::string& k, const std::string& v) { c.lz = to_real(k, v); }},
      {"bands", [](RunConfig& c, const std::string& k, const std::string& v) { c.bands = to_int(k, v); }},
      {"cutoff", [](RunConfig& c, const std::string& k, const std::string& v) { c.cutoff = to_real(k, v); }},
      {"epsilon", [](RunConfig& c, const std::string& k, const std::string& v) { c.epsilon = to_real(k, v); }},
      {"omega_drive",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.omega_drive = to_real(k, v); }},
      {"window.t0", [](RunConfig& c, const std::string& k, const std::string& v) { c.t0 = to_real(k, v); }},
      {"window.tf", [](RunConfig& c, const std::string& k, const std::string& v) { c.tf = to_real(k, v); }},
      {"integrator.dt", [](RunConfig& c, const std::string& k, const std::string& v) { c.dt = to_real(k, v); }},
      {"integrator.dt_fd",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.dt_fd = to_real(k, v); }},
      {"integrator.quadrature_points",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.quadrature_points = to_int(k, v); }},
      {"evolve.checkpoints",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.checkpoints = to_int(k, v); }},
      {"evolve.ramp", [](RunConfig& c, const std::string& k, const std::string& v) { c.ramp = to_real(k, v); }},
      {"resonances.tolerance",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.tolerance = to_real(k, v); }},
      {"output.format",
       [](RunConfig& c, const std::string&, const std::string& v) {
         c.format = v;
         c.format_explicit = true;
       }},
      {"output.path", [](RunConfig& c, const std::string&, const std::string& v) { c.output_path = v; }},
      {"validate.inject_fault", [](RunConfig& c, const std::string&, const std::string& v) { c.inject_fault = v; }},
      {"validate.sweep",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep = to_bool(k, v); }},
  };
  return table;
}

}  // namespace

DceConfig RunConfig::dce() const {
  DceConfig d;
  if (scenario == "dce-i") d.variant = DceVariant::RightOnly;
  else if (scenario == "dce-ii") d.variant = DceVariant::Breathing;
  else if (scenario == "dce-iii") d.variant = DceVariant::Shaking;
  else throw ConfigError("field 'scenario': '" + scenario + "' is not a DCE scenario");
  d.length = length;
  d.mass = mass;
  d.bc = bc;
  d.epsilon = epsilon;
  d.omega_drive = omega_drive;
  if (ramp > 0.0) d.ramp = Ramp{t0, tf, ramp};
  return d;
}

GwConfig RunConfig::gw() const {
  GwConfig g;
  g.lx = lx;
  g.ly = ly;
  g.lz = lz;
  g.mass = mass;
  g.bc = bc;
  g.epsilon = epsilon;
  g.omega_drive = omega_drive;
  g.frequency_cutoff = cutoff;
  return g;
}

void RunConfig::validate() const {
  if (scenario != "dce-i" && scenario != "dce-ii" && scenario != "dce-iii" && scenario != "gw-rigid")
    throw ConfigError("field 'scenario': unknown scenario '" + scenario + "'");
  for (auto [k, v] : {std::pair{"mass", mass}, {"length", length}, {"lx", lx}, {"ly", ly}, {"lz", lz},
                      {"cutoff", cutoff}, {"epsilon", epsilon}, {"omega_drive", omega_drive}, {"window.t0", t0},
                      {"window.tf", tf}, {"integrator.dt", dt}, {"integrator.dt_fd", dt_fd}, {"evolve.ramp", ramp},
                      {"resonances.tolerance", tolerance}})
    if (!std::isfinite(v)) throw ConfigError(std::string("field '") + k + "': must be finite");
  if (!(t0 < tf)) throw ConfigError("field 'window': need window.t0 < window.tf");
  if (bands < 1) throw ConfigError("field 'bands': must be >= 1");
  if (!(dt > 0.0)) throw ConfigError("field 'integrator.dt': must be positive");
  if (dt_fd < 0.0) throw ConfigError("field 'integrator.dt_fd': must be >= 0");
  if (quadrature_points < 2) throw ConfigError("field 'integrator.quadrature_points': must be >= 2");
  if (checkpoints < 1) throw ConfigError("field 'evolve.checkpoints': must be >= 1");
  if (ramp < 0.0 || 2.0 * ramp > tf - t0) throw ConfigError("field 'evolve.ramp': must fit twice in the window");
  if (!(tolerance >= 0.0)) throw ConfigError("field 'resonances.tolerance': must be >= 0");
  if (format != "csv" && format != "json") throw ConfigError("field 'output.format': expected csv or json");
  if (!inject_fault.empty() && inject_fault != "dce_sign")
    throw ConfigError("field 'validate.inject_fault': only 'dce_sign' is known");
  try {
    if (is_dce()) dce().validate();
    else gw().validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  return {{"scenario", scenario},
          {"bc", to_string(bc)},
          {"mass", fmt(mass)},
          {"length", fmt(length)},
          {"lx", fmt(lx)},
          {"ly", fmt(ly)},
          {"lz", fmt(lz)},
          {"bands", std::to_string(bands)},
          {"cutoff", fmt(cutoff)},
          {"epsilon", fmt(epsilon)},
          {"omega_drive", fmt(omega_drive)},
          {"window.t0", fmt(t0)},
          {"window.tf", fmt(tf)},
          {"integrator.dt", fmt(dt)},
          {"integrator.dt_fd", fmt(dt_fd)},
          {"integrator.quadrature_points", std::to_string(quadrature_points)},
          {"evolve.checkpoints", std::to_string(checkpoints)},
          {"evolve.ramp", fmt(ramp)},
          {"resonances.tolerance", fmt(tolerance)},
          {"output.format", format},
          {"output.path", output_path},
          {"validate.inject_fault", inject_fault},
          {"validate.sweep", sweep ? "true" : "false"}};
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown field '" + key + "'");
  it->second(cfg, key, value);
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace bogo
