#include "bogo/scenarios.hpp"

#include <cmath>

#include "bogo/errors.hpp"

namespace bogo {

namespace {

constexpr cplx I(0.0, 1.0);

int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

// Static modes carry 1/sqrt(2) extra for every zero index relative to the nonzero-index normalization.
double zero_index_weight(const StaticMode& a, int axis) { return a.index[axis] == 0 ? std::sqrt(0.5) : 1.0; }

HarmonicSum sine_term(cplx amplitude, double frequency) {
  HarmonicSum h;
  if (amplitude != 0.0) h.add(amplitude, frequency, PhaseForm::Sin);
  return h;
}

// u^4 (35 - 84u + 70u^2 - 20u^3) and its derivative
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * u * (35.0 - 84.0 * u + 70.0 * u * u - 20.0 * u * u * u);
}

double smoothstep_d(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double v = u * (1.0 - u);
  return 140.0 * v * v * v;
}

}  // namespace

const char* to_string(DceVariant v) {
  switch (v) {
    case DceVariant::RightOnly: return "dce-i";
    case DceVariant::Breathing: return "dce-ii";
    case DceVariant::Shaking: return "dce-iii";
  }
  return "?";
}

double Ramp::operator()(double t) const {
  return smoothstep((t - start) / rise) * smoothstep((end - t) / rise);
}

double Ramp::derivative(double t) const {
  const double up = (t - start) / rise, down = (end - t) / rise;
  return (smoothstep_d(up) * smoothstep(down) - smoothstep(up) * smoothstep_d(down)) / rise;
}

void DceConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw ArgumentError("cavity length must be positive");
  if (!(mass >= 0.0) || !std::isfinite(mass)) throw ArgumentError("mass must be non-negative");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ArgumentError("epsilon must be non-negative");
  if (!(omega_drive > 0.0) || !std::isfinite(omega_drive)) throw ArgumentError("drive frequency must be positive");
  if (ramp && !(ramp->rise > 0.0 && ramp->end - ramp->start >= 2.0 * ramp->rise))
    throw ArgumentError("ramp needs rise > 0 and room for both edges");
}

int DcePredictor::c_nm(int n, int m) const {
  const int s = parity_sign(n + m);
  switch (cfg_.variant) {
    case DceVariant::RightOnly: return s;
    case DceVariant::Breathing: return s + 1;
    case DceVariant::Shaking: return s - 1;
  }
  return 0;
}

cplx DcePredictor::amplitude(const StaticMode& a, const StaticMode& b) const {
  const int n = a.index[0], m = b.index[0];
  const double kn = a.k[0], km = b.k[0];
  const double root = std::sqrt(a.frequency * b.frequency);
  const double C = c_nm(n, m);
  if (cfg_.bc == BoundaryCondition::Neumann) {
    const double W2 = cfg_.omega_drive * cfg_.omega_drive;
    return I * C * (W2 - kn * kn - km * km) / (4.0 * root) * zero_index_weight(a, 0) * zero_index_weight(b, 0);
  }
  return -I * C * kn * km / (2.0 * root);
}

HarmonicSum DcePredictor::alpha(const StaticMode& a, const StaticMode& b) const {
  if (a.index == b.index) return {};
  return sine_term(amplitude(a, b), cfg_.omega_drive);
}

HarmonicSum DcePredictor::beta(const StaticMode& a, const StaticMode& b) const {
  return sine_term(-amplitude(a, b), cfg_.omega_drive);
}

StaticBasis DceScenario::basis(int count) const {
  return solve_interval_modes(config.length, params(), config.bc, count);
}

DceScenario build_dce(const DceConfig& c) {
  c.validate();
  const double L = c.length, e = c.epsilon, W = c.omega_drive;
  PerturbationSpec spec;
  spec.epsilon = e;
  spec.base_frequency = W;
  // Outward displacement per face, in units of epsilon.
  double right = 0.5 * L, left = 0.0;
  if (c.variant == DceVariant::Breathing) left = 0.5 * L;
  if (c.variant == DceVariant::Shaking) left = -0.5 * L;
  spec.delta_x.push_back({0, 1, HarmonicSum::sine(right, W), {}});
  if (left != 0.0) spec.delta_x.push_back({0, -1, HarmonicSum::sine(left, W), {}});

  // x_+ = L/2 + e right w(t) sin(Wt), x_- = -L/2 - e left w(t) sin(Wt)
  BoundaryTrajectory tr;
  const std::optional<Ramp> ramp = c.ramp;
  auto shape = [ramp, e, W](double t) { return e * (ramp ? (*ramp)(t) : 1.0) * std::sin(W * t); };
  auto shape_d = [ramp, e, W](double t) {
    const double w = ramp ? (*ramp)(t) : 1.0, dw = ramp ? ramp->derivative(t) : 0.0;
    return e * (w * W * std::cos(W * t) + dw * std::sin(W * t));
  };
  tr.x_plus = [=](double t) { return 0.5 * L + right * shape(t); };
  tr.v_plus = [=](double t) { return right * shape_d(t); };
  tr.x_minus = [=](double t) { return -0.5 * L - left * shape(t); };
  tr.v_minus = [=](double t) { return -left * shape_d(t); };

  DceScenario s{c, std::move(spec), std::move(tr), DcePredictor(c), {}};
  if (e > 0.1) s.warnings.push_back("epsilon above 0.1: wall amplitude is no longer small against L");
  return s;
}

void GwConfig::validate() const {
  for (double l : {lx, ly, lz})
    if (!(l > 0.0) || !std::isfinite(l)) throw ArgumentError("cavity lengths must be positive");
  if (!(mass >= 0.0)) throw ArgumentError("mass must be non-negative");
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) throw ArgumentError("epsilon must lie in [0, 1)");
  if (!(omega_drive > 0.0)) throw ArgumentError("drive frequency must be positive");
  if (!(frequency_cutoff > 0.0)) throw ArgumentError("frequency cutoff must be positive");
}

cplx GwPredictor::wall_alpha(const StaticMode& a, const StaticMode& b) const {
  if (a.index[2] != b.index[2]) return 0.0;
  const int n = a.index[0], np = b.index[0], m = a.index[1], mp = b.index[1];
  const double kx = a.k[0], kxp = b.k[0], ky = a.k[1], kyp = b.k[1];
  const double root = std::sqrt(a.frequency * b.frequency);
  const double cx = parity_sign(n + np) + 1, cy = parity_sign(m + mp) + 1;
  if (cfg_.bc == BoundaryCondition::Dirichlet) {
    double brace = 0.0;
    if (m == mp) brace += cx * kx * kxp;
    if (n == np) brace -= cy * ky * kyp;
    return I * brace / (4.0 * root);
  }
  // Zero indices: the x-face term carries the x-normalization of both modes, likewise for y.
  const double W2 = cfg_.omega_drive * cfg_.omega_drive;
  double brace = 0.0;
  if (n == np) brace += cy * (W2 - ky * ky - kyp * kyp) * zero_index_weight(a, 1) * zero_index_weight(b, 1);
  if (m == mp) brace -= cx * (W2 - kx * kx - kxp * kxp) * zero_index_weight(a, 0) * zero_index_weight(b, 0);
  return I * brace / (8.0 * root);
}

HarmonicSum GwPredictor::alpha(const StaticMode& a, const StaticMode& b) const {
  if (a.index == b.index) return {};
  return sine_term(wall_alpha(a, b), cfg_.omega_drive);
}

HarmonicSum GwPredictor::metric_only(const StaticMode& a, const StaticMode& b) const {
  if (a.index != b.index) return {};
  return sine_term(I * (a.k[0] * a.k[0] - a.k[1] * a.k[1]) / (2.0 * a.frequency), cfg_.omega_drive);
}

HarmonicSum GwPredictor::beta(const StaticMode& a, const StaticMode& b) const {
  HarmonicSum h = metric_only(a, b);
  h += sine_term(-wall_alpha(a, b), cfg_.omega_drive);
  HarmonicSum out;
  for (const auto& t : h.terms)
    if (std::abs(t.amplitude) > 0.0) out.add(t.amplitude, t.frequency, t.form);
  return out;
}

StaticBasis GwScenario::basis() const {
  return solve_box_modes(CavityGeometry::box(config.lx, config.ly, config.lz), params(), config.bc,
                         config.frequency_cutoff);
}

MetricProfile GwScenario::metric() const {
  MetricProfile p = MetricProfile::flat(3);
  const double W = config.omega_drive;
  p.epsilon = config.epsilon;
  p.delta_h.resize(3);
  p.delta_h[0] = {[W](double t) { return std::sin(W * t); }, [W](double t) { return W * std::cos(W * t); },
                  [W](double t) { return -W * W * std::sin(W * t); }};
  p.delta_h[1] = {[W](double t) { return -std::sin(W * t); }, [W](double t) { return -W * std::cos(W * t); },
                  [W](double t) { return W * W * std::sin(W * t); }};
  p.episode_duration = 2.0 * 3.141592653589793 / W;
  return p;
}

GwScenario build_gw(const GwConfig& c) {
  c.validate();
  const double W = c.omega_drive;
  PerturbationSpec spec;
  spec.epsilon = c.epsilon;
  spec.base_frequency = W;
  spec.laplacian[0] = HarmonicSum::sine(1.0, W);
  spec.laplacian[1] = HarmonicSum::sine(-1.0, W);
  for (int side : {1, -1}) {
    spec.delta_x.push_back({0, side, HarmonicSum::sine(-0.25 * c.lx, W), {}});
    spec.delta_x.push_back({1, side, HarmonicSum::sine(0.25 * c.ly, W), {}});
  }
  return GwScenario{c, std::move(spec), GwPredictor(c)};
}

std::pair<double, double> gw_wall_positions(const GwConfig& c, double t) {
  const double s = c.epsilon * std::sin(c.omega_drive * t);
  return {0.5 * c.lx / std::sqrt(1.0 + s), 0.5 * c.ly / std::sqrt(1.0 - s)};
}

}  // namespace bogo
