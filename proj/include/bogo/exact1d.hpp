#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bogo/core.hpp"

namespace bogo {

struct BoundaryTrajectory {
  ScalarFn x_minus, x_plus;
  ScalarFn v_minus, v_plus;

  static BoundaryTrajectory fixed(double x_minus, double x_plus);
  // Throws InvalidTrajectory on x_plus <= x_minus or |v| >= 1.
  void validate_at(double t) const;
};

// Psi(x) = a C(x - origin) + b S(x - origin), C = cos(k s), S = sin(k s)/k, with cosh/sinh when k^2 < 0.
struct InstantaneousMode {
  double omega = 0.0;  // signed
  double k2 = 0.0;
  double a = 0.0, b = 0.0;
  double origin = 0.0;
  int label = 0;

  bool evanescent() const { return k2 < 0.0; }
  double value(double x) const;
  double deriv(double x) const;
};

struct InstantaneousBasis {
  double time = 0.0;
  double x_minus = 0.0, x_plus = 0.0, v_minus = 0.0, v_plus = 0.0;
  double mass2 = 0.0;  // m^2 + F
  std::vector<InstantaneousMode> plus, minus;

  std::size_t bands() const { return plus.size(); }
  // Block ordering: all positive-branch modes, then all negative-branch ones.
  const InstantaneousMode& at(std::size_t i) const { return i < plus.size() ? plus[i] : minus[i - plus.size()]; }
  double min_abs_frequency() const;
};

struct SolverOptions {
  double bracket_density = 4.0;  // k grid spacing pi / (density * L)
  int quadrature_points = 0;     // 0: chosen from the band count
};

// Characteristic function whose positive roots are the positive-branch frequencies for
// boundary velocities (v_minus, v_plus); the negative branch is the same with velocities flipped.
double characteristic_function(BoundaryCondition bc, double length, double v_minus, double v_plus, double mass2,
                               double omega);

InstantaneousBasis solve_instantaneous_basis(const BoundaryTrajectory& traj, const FieldParams& params,
                                             BoundaryCondition bc, double t, int bands,
                                             const SolverOptions& options = {});

// int Psi_a Psi_b, and int [(m^2 + F + w_a w_b) Psi_a Psi_b + Psi_a' Psi_b'].
Eigen::MatrixXd basis_overlaps(const InstantaneousBasis& basis, int points = 0);
Eigen::MatrixXd basis_norm_matrix(const InstantaneousBasis& basis, int points = 0);

Eigen::MatrixXcd m_matrix(std::size_t bands);
Eigen::MatrixXcd vhat_generator(const Eigen::MatrixXd& vhat);  // M V M*

Eigen::MatrixXd assemble_vhat(const BoundaryTrajectory& traj, const FieldParams& params, BoundaryCondition bc,
                              double t, const InstantaneousBasis& basis_now, double dt_fd,
                              const SolverOptions& options = {});

struct EvolutionOptions {
  double dt_fd = 0.0;  // 0: dt / 10
  bool phase_absorbed = true;
  std::vector<double> checkpoints;
  SolverOptions solver;
};

struct TransformationState {
  Eigen::MatrixXcd U;
  double t_current = 0.0;
  long step_count = 0;
  std::vector<double> checkpoint_times;
  std::vector<Eigen::MatrixXcd> checkpoint_values;

  std::size_t bands() const { return static_cast<std::size_t>(U.rows() / 2); }
  Eigen::MatrixXcd alpha() const { return U.topLeftCorner(bands(), bands()); }
  Eigen::MatrixXcd beta() const { return U.topRightCorner(bands(), bands()); }
};

TransformationState evolve_transformation(const BoundaryTrajectory& traj, const FieldParams& params,
                                          BoundaryCondition bc, double t0, double tf, int bands, double dt,
                                          const EvolutionOptions& options = {});

double bogoliubov_identity_residual(const TransformationState& state);
double bogoliubov_identity_residual(const Eigen::MatrixXcd& U);

}  // namespace bogo
