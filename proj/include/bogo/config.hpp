#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bogo/scenarios.hpp"

namespace bogo {

// Flat run configuration. File syntax: one `key = value` per line, '#' starts a comment,
// dotted keys group related settings (window.t0, integrator.dt, ...).
struct RunConfig {
  std::string scenario = "dce-i";  // dce-i, dce-ii, dce-iii, gw-rigid
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double mass = 0.0;
  double length = 3.141592653589793;
  double lx = 3.141592653589793, ly = 3.141592653589793, lz = 3.141592653589793;
  int bands = 6;
  double cutoff = 2.0;
  double epsilon = 1e-3;
  double omega_drive = 3.0;
  double t0 = 0.0, tf = 50.0 / 3.0;
  double dt = 0.05;
  double dt_fd = 0.0;  // 0: dt / 10
  int quadrature_points = 64;
  int checkpoints = 10;
  double ramp = 0.0;  // rise time of the wall switch-on for evolve-exact, 0: none
  double tolerance = 1e-9;
  std::string format = "csv";
  bool format_explicit = false;
  std::string output_path;
  std::string inject_fault;
  bool sweep = false;

  bool is_dce() const { return scenario != "gw-rigid"; }
  DceConfig dce() const;
  GwConfig gw() const;
  void validate() const;
  // Every key with its resolved value, in documentation order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

// Throws ConfigError naming the source line and key.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

}  // namespace bogo
