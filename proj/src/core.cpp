#include "bogo/core.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "bogo/errors.hpp"

namespace bogo {

void FieldParams::validate() const {
  if (!std::isfinite(mass) || mass < 0.0) throw ArgumentError("field mass must be finite and >= 0");
  if (!std::isfinite(coupling_xi)) throw ArgumentError("coupling xi must be finite");
}

const char* to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  if (text == "dirichlet" || text == "Dirichlet") return BoundaryCondition::Dirichlet;
  if (text == "neumann" || text == "Neumann") return BoundaryCondition::Neumann;
  throw ArgumentError("unknown boundary condition '" + std::string(text) + "'");
}

MetricProfile MetricProfile::flat(int dim) {
  MetricProfile p;
  p.spatial_dim = dim;
  p.h0.assign(dim, 1.0);
  return p;
}

void MetricProfile::validate() const {
  if (spatial_dim != 1 && spatial_dim != 3) throw InvalidMetric("spatial_dim must be 1 or 3");
  if (static_cast<int>(h0.size()) != spatial_dim)
    throw InvalidMetric("h0 needs one entry per axis");
  for (double h : h0)
    if (!std::isfinite(h) || h <= 0.0) throw InvalidMetric("h0 is not positive-definite");
  if (!delta_h.empty() && static_cast<int>(delta_h.size()) != spatial_dim)
    throw InvalidMetric("delta_h needs one entry per axis");
  if (!std::isfinite(epsilon)) throw InvalidMetric("epsilon must be finite");
  if (!(episode_duration > 0.0)) throw InvalidMetric("episode duration must be positive");
}

double central_d1(const ScalarFn& f, double t, double h) {
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

double central_d2(const ScalarFn& f, double t, double h) {
  return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) / (12 * h * h);
}

namespace {

struct Axis {
  double h0;
  ScalarFn value, d1, d2;
};

struct Metric {
  std::vector<Axis> axes;
  double epsilon;
  double mass2;
  double xi;

  static double checked(const ScalarFn& f, double t) {
    double v = f(t);
    if (!std::isfinite(v)) throw EvaluationError("metric perturbation not evaluable at t=" + std::to_string(t));
    return v;
  }
};

}  // namespace

DerivedMetricScalars derive_metric_scalars(const MetricProfile& profile, const FieldParams& params) {
  profile.validate();
  params.validate();

  auto m = std::make_shared<Metric>();
  m->epsilon = profile.epsilon;
  m->mass2 = params.mass * params.mass;
  m->xi = params.coupling_xi;
  // Second differences amplify roundoff by 1/h^2, so they get a wider step.
  const double h1 = 1e-5 * profile.episode_duration;
  const double h2 = 1e-3 * profile.episode_duration;
  for (int i = 0; i < profile.spatial_dim; ++i) {
    Axis a;
    a.h0 = profile.h0[i];
    if (!profile.delta_h.empty() && profile.delta_h[i].value) {
      const auto& src = profile.delta_h[i];
      a.value = src.value;
      a.d1 = src.d1 ? src.d1 : ScalarFn([f = src.value, h1](double t) { return central_d1(f, t, h1); });
      a.d2 = src.d2 ? src.d2 : ScalarFn([f = src.value, h2](double t) { return central_d2(f, t, h2); });
    }
    m->axes.push_back(std::move(a));
  }

  DerivedMetricScalars out;
  // q = (1/2) sum hdot/h ; dq/dt = (1/2) sum (hddot/h - hdot^2/h^2)
  out.q = [m](double t) {
    double q = 0.0;
    for (const auto& a : m->axes) {
      if (!a.value) continue;
      double h = a.h0 + m->epsilon * Metric::checked(a.value, t);
      q += 0.5 * m->epsilon * Metric::checked(a.d1, t) / h;
    }
    return q;
  };
  out.r_bar = [m](double t) {
    double q = 0.0, dq = 0.0, trace = 0.0;
    for (const auto& a : m->axes) {
      if (!a.value) continue;
      double h = a.h0 + m->epsilon * Metric::checked(a.value, t);
      double hd = m->epsilon * Metric::checked(a.d1, t);
      double hdd = m->epsilon * Metric::checked(a.d2, t);
      q += 0.5 * hd / h;
      dq += 0.5 * (hdd / h - hd * hd / (h * h));
      trace += (hd / h) * (hd / h);
    }
    // -1/4 [d h^ij][d h_ij] = +1/4 sum (hdot/h)^2 for a diagonal metric
    return 2.0 * dq + q * q + 0.25 * trace;
  };
  out.delta_r = [m](double t) {
    double s = 0.0;
    for (const auto& a : m->axes)
      if (a.value) s += 0.5 * Metric::checked(a.value, t) / a.h0;
    return s;
  };
  // q^2 and the trace term are second order, so only 2 dq/dt survives.
  out.delta_r_bar = [m](double t) {
    double s = 0.0;
    for (const auto& a : m->axes)
      if (a.value) s += Metric::checked(a.d2, t) / a.h0;
    return s;
  };
  // Homogeneous diagonal metrics have flat slices, so R^h = 0 and the test reduces to m^2 > 0.
  out.f_term = [m](double) {
    const double spatial_curvature = 0.0;
    const double lowest = m->xi * spatial_curvature + m->mass2;
    return lowest > 0.0 ? 0.0 : -lowest + kFRegulator;
  };
  return out;
}

}  // namespace bogo
