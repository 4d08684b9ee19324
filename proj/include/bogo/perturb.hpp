#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bogo/harmonic.hpp"
#include "bogo/staticmodes.hpp"

namespace bogo {

using SpatialFn = std::function<double(const double*)>;

// One cavity face (interval: one endpoint). Outward normal is side * e_axis.
struct FacePerturbation {
  int axis = 0;
  int side = 1;
  HarmonicSum displacement;  // Delta x(t), positive outward
  SpatialFn profile;         // optional weight over the face, 1 if unset
};

struct PotentialTerm {
  HarmonicSum time;
  SpatialFn shape;
};

// First-order data: Delta O = sum_i c_i(t) d_i^2 + p(t, x), Delta r, Delta Rbar, Delta x.
struct PerturbationSpec {
  double epsilon = 0.0;
  std::array<HarmonicSum, 3> laplacian;
  std::vector<PotentialTerm> potential;
  HarmonicSum delta_r;
  HarmonicSum delta_r_bar;
  HarmonicSum delta_f;  // must stay empty: Delta F never contributes to resonances
  std::vector<FacePerturbation> delta_x;
  std::optional<double> base_frequency;

  void validate(int dim) const;
  // Displacement on a face at time t and face point x (0 if the face is unperturbed).
  double displacement(int axis, int side, double t, const double* x) const;
  PerturbationSpec& operator+=(const PerturbationSpec& other);
};

struct CouplingOptions {
  // Apply the resonance-target substitution per harmonic and drop diagonal alpha.
  bool resonant = false;
  int volume_points = 64;
  int face_points = 64;
};

enum class Branch { Plus, Minus };

// [Delta O(t) + w_n (w_n +- w_m) Delta r(t) + xi Delta Rbar(t)] Psi_n as a function of position.
std::function<double(const std::vector<double>&)> superoperator_apply(const PerturbationSpec& spec,
                                                                      const StaticBasis& basis, std::size_t n,
                                                                      std::size_t m, Branch sign, double t);

HarmonicSum coupling_alpha(const PerturbationSpec& spec, const StaticBasis& basis, std::size_t n, std::size_t m,
                           BoundaryCondition bc, const CouplingOptions& options = {});
HarmonicSum coupling_beta(const PerturbationSpec& spec, const StaticBasis& basis, std::size_t n, std::size_t m,
                          BoundaryCondition bc, const CouplingOptions& options = {});

struct CouplingMatrix {
  std::size_t size = 0;
  std::vector<HarmonicSum> alpha;  // row-major size x size
  std::vector<HarmonicSum> beta;

  explicit CouplingMatrix(std::size_t n = 0) : size(n), alpha(n * n), beta(n * n) {}
  HarmonicSum& a(std::size_t n, std::size_t m) { return alpha[n * size + m]; }
  HarmonicSum& b(std::size_t n, std::size_t m) { return beta[n * size + m]; }
  const HarmonicSum& a(std::size_t n, std::size_t m) const { return alpha[n * size + m]; }
  const HarmonicSum& b(std::size_t n, std::size_t m) const { return beta[n * size + m]; }
  void set_envelope(const Envelope& e);
};

// All pairs of the basis; mode samples on faces are shared between pairs.
CouplingMatrix build_couplings(const PerturbationSpec& spec, const StaticBasis& basis,
                               const CouplingOptions& options = {});

enum class ResonanceKind { ModeMixing, PairCreation };
const char* to_string(ResonanceKind k);

struct Resonance {
  std::size_t n = 0, m = 0;  // basis positions
  ResonanceKind kind = ResonanceKind::ModeMixing;
  double detuning = 0.0;  // w_n -+ w_m - omega_p
};

std::vector<Resonance> find_resonances(const StaticBasis& basis, double omega_p, double tolerance);

struct BogoliubovMatrix {
  Eigen::MatrixXcd alpha;
  Eigen::MatrixXcd beta;
  double epsilon_used = 0.0;
  bool asymptotic = false;
  double t0 = 0.0, tf = 0.0;
  std::vector<std::string> warnings;

  double identity_residual() const;
};

// max |alpha alpha^dag - beta beta^dag - I|
double identity_residual(const Eigen::MatrixXcd& alpha, const Eigen::MatrixXcd& beta);

BogoliubovMatrix bogoliubov_perturbative(const CouplingMatrix& couplings, const StaticBasis& basis, double epsilon,
                                         double t0, double tf);
BogoliubovMatrix bogoliubov_asymptotic(const CouplingMatrix& couplings, const StaticBasis& basis, double epsilon);

}  // namespace bogo
