#pragma once

#include <functional>
#include <string_view>
#include <vector>

namespace bogo {

struct FieldParams {
  double mass = 0.0;
  double coupling_xi = 0.0;

  void validate() const;
};

enum class BoundaryCondition { Dirichlet, Neumann };

const char* to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view text);

using ScalarFn = std::function<double(double)>;

// One diagonal entry of the first-order metric perturbation. Derivatives are optional;
// missing ones are taken by 4th-order central differences.
struct AxisPerturbation {
  ScalarFn value;
  ScalarFn d1;
  ScalarFn d2;
};

// h_ii(t) = h0_i + epsilon * delta_h_i(t), diagonal and spatially homogeneous.
struct MetricProfile {
  int spatial_dim = 1;
  std::vector<double> h0;
  std::vector<AxisPerturbation> delta_h;  // empty, or one entry per axis (null value = 0)
  double epsilon = 0.0;
  double episode_duration = 1.0;  // sets the finite-difference step

  static MetricProfile flat(int dim);
  void validate() const;
};

struct DerivedMetricScalars {
  ScalarFn q;
  ScalarFn r_bar;
  ScalarFn delta_r;
  ScalarFn delta_r_bar;
  ScalarFn f_term;
};

// Regulator used for F(t) when xi R^h + m^2 fails to be positive.
inline constexpr double kFRegulator = 1e-12;

DerivedMetricScalars derive_metric_scalars(const MetricProfile& profile, const FieldParams& params);

// 4th-order central differences.
double central_d1(const ScalarFn& f, double t, double h);
double central_d2(const ScalarFn& f, double t, double h);

}  // namespace bogo
