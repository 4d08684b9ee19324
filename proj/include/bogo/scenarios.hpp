#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bogo/exact1d.hpp"
#include "bogo/perturb.hpp"

namespace bogo {

enum class DceVariant { RightOnly, Breathing, Shaking };  // (i), (ii), (iii)

const char* to_string(DceVariant v);

// Switches the wall oscillation on and off smoothly so that both ends of a window are static.
// w(t) rises 0 -> 1 over [start, start + rise] and falls back over [end - rise, end], C^3 at the joints.
struct Ramp {
  double start = 0.0;
  double end = 1.0;
  double rise = 0.5;

  double operator()(double t) const;
  double derivative(double t) const;
};

struct DceConfig {
  DceVariant variant = DceVariant::RightOnly;
  double length = 3.141592653589793;
  double mass = 0.0;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double epsilon = 1e-3;
  double omega_drive = 3.0;
  std::optional<Ramp> ramp;  // exact trajectory only

  void validate() const;
};

// Closed-form couplings with the drive frequency substituted for |w_n -+ w_m|.
// alpha is zero on the diagonal: w_n - w_n never matches a positive drive frequency.
class DcePredictor {
 public:
  explicit DcePredictor(DceConfig c) : cfg_(c) {}
  int c_nm(int n, int m) const;
  HarmonicSum alpha(const StaticMode& a, const StaticMode& b) const;
  HarmonicSum beta(const StaticMode& a, const StaticMode& b) const;

 private:
  cplx amplitude(const StaticMode& a, const StaticMode& b) const;
  DceConfig cfg_;
};

struct DceScenario {
  DceConfig config;
  PerturbationSpec spec;
  BoundaryTrajectory trajectory;
  DcePredictor predictor;
  std::vector<std::string> warnings;

  FieldParams params() const { return {config.mass, 0.0}; }
  StaticBasis basis(int count) const;
};

DceScenario build_dce(const DceConfig& config);

struct GwConfig {
  double lx = 3.141592653589793, ly = 3.141592653589793, lz = 3.141592653589793;
  double mass = 0.0;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double epsilon = 1e-3;
  double omega_drive = 1.0;
  double frequency_cutoff = 2.0;

  void validate() const;
};

class GwPredictor {
 public:
  explicit GwPredictor(GwConfig c) : cfg_(c) {}
  HarmonicSum alpha(const StaticMode& a, const StaticMode& b) const;
  HarmonicSum beta(const StaticMode& a, const StaticMode& b) const;
  // The term produced by the metric change alone, as for free-falling walls.
  HarmonicSum metric_only(const StaticMode& a, const StaticMode& b) const;

 private:
  cplx wall_alpha(const StaticMode& a, const StaticMode& b) const;
  GwConfig cfg_;
};

struct GwScenario {
  GwConfig config;
  PerturbationSpec spec;
  GwPredictor predictor;

  FieldParams params() const { return {config.mass, 0.0}; }
  StaticBasis basis() const;
  MetricProfile metric() const;
};

GwScenario build_gw(const GwConfig& config);

// Coordinate positions of the rigid walls, x_+ and y_+ (the minus walls are their negatives).
std::pair<double, double> gw_wall_positions(const GwConfig& config, double t);

}  // namespace bogo
