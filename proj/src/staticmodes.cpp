#include "bogo/staticmodes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bogo/errors.hpp"
#include "bogo/quadrature.hpp"

namespace bogo {

CavityGeometry CavityGeometry::interval(double L) {
  CavityGeometry g;
  g.kind = Kind::Interval;
  g.lengths = {L, 1.0, 1.0};
  g.validate();
  return g;
}

CavityGeometry CavityGeometry::box(double lx, double ly, double lz) {
  CavityGeometry g;
  g.kind = Kind::Box;
  g.lengths = {lx, ly, lz};
  g.validate();
  return g;
}

double CavityGeometry::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= lengths[i];
  return v;
}

void CavityGeometry::validate() const {
  for (int i = 0; i < dim(); ++i)
    if (!std::isfinite(lengths[i]) || lengths[i] <= 0.0) throw ArgumentError("cavity lengths must be positive");
}

std::string StaticMode::label() const {
  std::string s = "(";
  for (int i = 0; i < dim(); ++i) s += (i ? "," : "") + std::to_string(index[i]);
  return s + ")";
}

double StaticMode::factor(int axis, double x) const {
  double arg = k[axis] * (x + 0.5 * lengths[axis]);
  return form[axis] == ParityForm::Sine ? std::sin(arg) : std::cos(arg);
}

double StaticMode::factor_d1(int axis, double x) const {
  double arg = k[axis] * (x + 0.5 * lengths[axis]);
  return form[axis] == ParityForm::Sine ? k[axis] * std::cos(arg) : -k[axis] * std::sin(arg);
}

double StaticMode::value_at(const double* x) const {
  double v = normalization;
  for (int i = 0; i < dim(); ++i) v *= factor(i, x[i]);
  return v;
}

void StaticMode::gradient_at(const double* x, double* grad) const {
  double f[3], d[3];
  for (int i = 0; i < dim(); ++i) {
    f[i] = factor(i, x[i]);
    d[i] = factor_d1(i, x[i]);
  }
  for (int i = 0; i < dim(); ++i) {
    double g = normalization * d[i];
    for (int j = 0; j < dim(); ++j)
      if (j != i) g *= f[j];
    grad[i] = g;
  }
}

bool StaticMode::contains(const double* x, double slack) const {
  for (int i = 0; i < dim(); ++i) {
    double h = 0.5 * lengths[i];
    if (!(std::abs(x[i]) <= h * (1.0 + slack))) return false;
  }
  return true;
}

std::vector<double> StaticBasis::frequencies() const {
  std::vector<double> w;
  for (const auto& m : modes) w.push_back(m.frequency);
  return w;
}

int StaticBasis::find(const std::vector<int>& index) const {
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].index == index) return static_cast<int>(i);
  return -1;
}

namespace {

// Normalized so that int Psi^2 = 1/(2 omega): each axis integrates sin^2/cos^2 to L/2,
// except a zero-index cosine axis which integrates to L.
StaticMode make_mode(const std::vector<int>& index, const std::vector<double>& lengths,
                     BoundaryCondition bc, double mass) {
  StaticMode m;
  m.index = index;
  m.lengths = lengths;
  double k2 = 0.0, weight = 1.0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    double k = std::numbers::pi * index[i] / lengths[i];
    m.k.push_back(k);
    m.form.push_back(bc == BoundaryCondition::Dirichlet ? ParityForm::Sine : ParityForm::Cosine);
    k2 += k * k;
    weight *= index[i] == 0 ? lengths[i] : 0.5 * lengths[i];
  }
  m.frequency = std::sqrt(k2 + mass * mass);
  m.normalization = 1.0 / std::sqrt(2.0 * m.frequency * weight);
  return m;
}

bool mode_less(const StaticMode& a, const StaticMode& b) {
  double tol = 1e-12 * std::max(a.frequency, b.frequency);
  if (std::abs(a.frequency - b.frequency) > tol) return a.frequency < b.frequency;
  return a.index < b.index;
}

}  // namespace

StaticBasis solve_interval_modes(double L, const FieldParams& params, BoundaryCondition bc, int count) {
  if (count <= 0) throw ArgumentError("mode count must be positive");
  params.validate();
  StaticBasis b;
  b.geometry = CavityGeometry::interval(L);
  b.bc = bc;
  b.params = params;
  int n = (bc == BoundaryCondition::Dirichlet || params.mass == 0.0) ? 1 : 0;
  for (; static_cast<int>(b.modes.size()) < count; ++n) b.modes.push_back(make_mode({n}, {L}, bc, params.mass));
  return b;
}

StaticBasis solve_box_modes(const CavityGeometry& geometry, const FieldParams& params, BoundaryCondition bc,
                            double frequency_cutoff) {
  if (geometry.kind != CavityGeometry::Kind::Box) throw ArgumentError("box modes need a box geometry");
  geometry.validate();
  params.validate();
  if (!std::isfinite(frequency_cutoff)) throw ArgumentError("frequency cutoff must be finite");
  StaticBasis b;
  b.geometry = geometry;
  b.bc = bc;
  b.params = params;
  const double m2 = params.mass * params.mass;
  const double cut = frequency_cutoff * (1.0 + 1e-12);
  const double kmax = cut > params.mass ? std::sqrt(cut * cut - m2) : 0.0;
  const int lo = bc == BoundaryCondition::Dirichlet ? 1 : 0;
  std::vector<double> L(geometry.lengths.begin(), geometry.lengths.end());
  int hi[3];
  for (int i = 0; i < 3; ++i) hi[i] = static_cast<int>(std::floor(kmax * L[i] / std::numbers::pi)) + 1;
  for (int a = lo; a <= hi[0]; ++a)
    for (int c = lo; c <= hi[1]; ++c)
      for (int d = lo; d <= hi[2]; ++d) {
        if (a == 0 && c == 0 && d == 0 && params.mass == 0.0) continue;
        StaticMode m = make_mode({a, c, d}, L, bc, params.mass);
        if (m.frequency <= cut) b.modes.push_back(std::move(m));
      }
  if (b.modes.empty()) throw EmptyBasis("frequency cutoff lies below the lowest box frequency");
  std::sort(b.modes.begin(), b.modes.end(), mode_less);
  return b;
}

double eval_mode(const StaticMode& mode, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != mode.dim()) throw ArgumentError("point dimension mismatch");
  if (!mode.contains(point.data())) throw DomainError("point lies outside the cavity");
  return mode.value_at(point.data());
}

std::vector<double> eval_mode_gradient(const StaticMode& mode, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != mode.dim()) throw ArgumentError("point dimension mismatch");
  if (!mode.contains(point.data())) throw DomainError("point lies outside the cavity");
  std::vector<double> g(mode.dim());
  mode.gradient_at(point.data(), g.data());
  return g;
}

double mode_overlap(const StaticMode& a, const StaticMode& b, int points) {
  double total = a.normalization * b.normalization;
  for (int i = 0; i < a.dim(); ++i) {
    double h = 0.5 * a.lengths[i];
    GaussRule r = gauss_legendre(points, -h, h);
    double s = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * a.factor(i, r.nodes[j]) * b.factor(i, r.nodes[j]);
    total *= s;
  }
  return total;
}

double orthonormality_residual(const StaticBasis& basis, int points) {
  if (basis.modes.empty()) throw ArgumentError("orthonormality residual of an empty basis");
  double worst = 0.0;
  for (std::size_t n = 0; n < basis.size(); ++n)
    for (std::size_t m = n; m < basis.size(); ++m) {
      double expected = n == m ? 0.5 / basis.modes[n].frequency : 0.0;
      worst = std::max(worst, std::abs(mode_overlap(basis.modes[n], basis.modes[m], points) - expected));
    }
  return worst;
}

}  // namespace bogo
