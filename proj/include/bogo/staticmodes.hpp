#pragma once

#include <array>
#include <string>
#include <vector>

#include "bogo/core.hpp"

namespace bogo {

struct CavityGeometry {
  enum class Kind { Interval, Box };
  Kind kind = Kind::Interval;
  std::array<double, 3> lengths{1.0, 1.0, 1.0};  // only lengths[0] used for an interval

  static CavityGeometry interval(double L);
  static CavityGeometry box(double lx, double ly, double lz);
  int dim() const { return kind == Kind::Interval ? 1 : 3; }
  double volume() const;
  void validate() const;
};

enum class ParityForm { Sine, Cosine };

// Product of per-axis factors sin/cos[k_i (x_i + L_i/2)], centered cavity.
struct StaticMode {
  std::vector<int> index;
  std::vector<double> k;
  std::vector<double> lengths;
  std::vector<ParityForm> form;
  double frequency = 0.0;
  double normalization = 0.0;

  int dim() const { return static_cast<int>(index.size()); }
  std::string label() const;

  // Fast paths for quadrature; no domain check.
  double factor(int axis, double x) const;
  double factor_d1(int axis, double x) const;
  double value_at(const double* x) const;
  void gradient_at(const double* x, double* grad) const;
  bool contains(const double* x, double slack = 1e-12) const;
};

struct StaticBasis {
  CavityGeometry geometry;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  FieldParams params;
  std::vector<StaticMode> modes;

  std::size_t size() const { return modes.size(); }
  std::vector<double> frequencies() const;
  // Position of the mode with this multi-index, or -1.
  int find(const std::vector<int>& index) const;
};

StaticBasis solve_interval_modes(double L, const FieldParams& params, BoundaryCondition bc, int count);
StaticBasis solve_box_modes(const CavityGeometry& geometry, const FieldParams& params,
                            BoundaryCondition bc, double frequency_cutoff);

// Throws DomainError outside the closed cavity.
double eval_mode(const StaticMode& mode, const std::vector<double>& point);
std::vector<double> eval_mode_gradient(const StaticMode& mode, const std::vector<double>& point);

// max_{n,m} |int Psi_n Psi_m - delta_nm / (2 omega_n)|
double orthonormality_residual(const StaticBasis& basis, int points = 64);

// int Psi_a Psi_b dV by tensor Gauss-Legendre; separable, so evaluated as a product of 1D rules.
double mode_overlap(const StaticMode& a, const StaticMode& b, int points = 64);

}  // namespace bogo
