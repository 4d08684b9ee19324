#include "bogo/exact1d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "bogo/errors.hpp"
#include "bogo/quadrature.hpp"

namespace bogo {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// C = cos(k s), S = sin(k s)/k as entire functions of k^2.
template <typename T>
void cs(T k2, double s, T& C, T& S) {
  const T x = k2 * (s * s);
  if (std::abs(x) < 1e-6) {
    C = 1.0 - x / 2.0 + x * x / 24.0;
    S = s * (1.0 - x / 6.0 + x * x / 120.0);
    return;
  }
  if constexpr (std::is_same_v<T, double>) {
    if (k2 > 0.0) {
      const double k = std::sqrt(k2);
      C = std::cos(k * s);
      S = std::sin(k * s) / k;
    } else {
      const double q = std::sqrt(-k2);
      C = std::cosh(q * s);
      S = std::sinh(q * s) / q;
    }
  } else {
    const T k = std::sqrt(k2);
    C = std::cos(k * s);
    S = std::sin(k * s) / k;
  }
}

// Coefficients (a, b) of the end condition a Psi + b Psi' = 0.
// Neumann: Psi' = -w v Psi.  Dirichlet: w Psi = -v Psi', which is plain Psi = 0 at rest.
template <typename T>
void end_condition(BoundaryCondition bc, T w, double v, T& a, T& b) {
  if (bc == BoundaryCondition::Neumann) {
    a = w * v;
    b = 1.0;
  } else if (v == 0.0) {
    a = 1.0;
    b = 0.0;
  } else {
    a = w;
    b = v;
  }
}

template <typename T>
T char_fn(BoundaryCondition bc, double L, double vm, double vp, double mass2, T w) {
  T am, bm, ap, bp, C, S;
  end_condition(bc, w, vm, am, bm);
  end_condition(bc, w, vp, ap, bp);
  const T k2 = w * w - mass2;
  cs(k2, L, C, S);
  const T psi = bm * C - am * S;
  const T dpsi = -bm * k2 * S - am * C;
  return ap * psi + bp * dpsi;
}

double char_derivative(BoundaryCondition bc, double L, double vm, double vp, double mass2, double w) {
  const double h = 1e-20 * std::max(1.0, w);
  return char_fn<cplx>(bc, L, vm, vp, mass2, cplx(w, h)).imag() / h;
}

struct Root {
  double omega;
  int label;
};

int quadrature_points_for(int bands, const SolverOptions& o) {
  return o.quadrature_points > 0 ? o.quadrature_points : std::max(64, 4 * bands + 32);
}

// Positive roots for effective velocities (vm, vp), labelled so that label n continues the
// static mode n. Roots continuing from omega = 0 (label 0) are dropped unless the Neumann
// ground mode is genuine (m > 0).
std::vector<Root> positive_roots(BoundaryCondition bc, double L, double vm, double vp, double mass, double mass2,
                                 int bands, double density, std::string& trace) {
  const bool rank_labels = bc == BoundaryCondition::Neumann && mass > 0.0;
  const int first = rank_labels ? 0 : 1;
  const int last = first + bands - 1;

  std::vector<double> grid;
  if (mass2 > 0.0) {
    const double m = std::sqrt(mass2);
    for (int j = 1; j <= 32; ++j) grid.push_back(m * j / 32.0);
  } else {
    grid.push_back(1e-9 / L);
  }
  const double dk = kPi / (density * L);
  const double kmax = (last + 3) * kPi / L;
  for (int j = 1; j * dk <= kmax; ++j) grid.push_back(std::sqrt(j * dk * j * dk + mass2));

  auto f = [&](double w) { return char_fn<double>(bc, L, vm, vp, mass2, w); };
  std::vector<Root> roots;
  double wl = grid[0], fl = f(wl);
  for (std::size_t g = 1; g < grid.size(); ++g) {
    double wr = grid[g], fr = f(wr);
    if (fl == 0.0 || (fl < 0.0) != (fr < 0.0)) {
      double lo = wl, hi = wr, flo = fl;
      if (fl != 0.0) {
        while (hi - lo > 1e-7 * hi) {
          double mid = 0.5 * (lo + hi), fm = f(mid);
          if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
          else hi = mid;
        }
      }
      double w = fl == 0.0 ? wl : 0.5 * (lo + hi);
      for (int it = 0; it < 8 && fl != 0.0; ++it) {
        double d = char_derivative(bc, L, vm, vp, mass2, w);
        if (d == 0.0) break;
        double step = f(w) / d;
        double next = w - step;
        // the root may sit on a grid point, so allow a hair outside the cell
        const double slack = 1e-6 * (wr - wl);
        if (next < wl - slack || next > wr + slack) break;
        w = next;
        if (std::abs(step) <= 1e-15 * w) break;
      }
      const double k2 = w * w - mass2;
      int label;
      if (rank_labels) {
        label = static_cast<int>(roots.size());
      } else if (k2 <= 0.0 || std::sqrt(k2) * L < 0.5 * kPi) {
        label = 0;
      } else {
        const double k = std::sqrt(k2);
        double phase = bc == BoundaryCondition::Dirichlet
                           ? k * L + std::atan(vp * k / w) - std::atan(vm * k / w)
                           : k * L + std::atan(w * vm / k) - std::atan(w * vp / k);
        label = static_cast<int>(std::lround(phase / kPi));
      }
      std::ostringstream os;
      os << " [" << wl << "," << wr << "]->" << w << "(n=" << label << ")";
      trace += os.str();
      if (label >= first && label <= last) roots.push_back({w, label});
      else if (rank_labels) roots.push_back({w, label});
    }
    wl = wr;
    fl = fr;
    if (static_cast<int>(roots.size()) >= bands && rank_labels) break;
  }
  if (rank_labels && static_cast<int>(roots.size()) > bands) roots.resize(bands);
  return roots;
}

bool labels_complete(const std::vector<Root>& roots, int first, int bands) {
  if (static_cast<int>(roots.size()) != bands) return false;
  for (int i = 0; i < bands; ++i)
    if (roots[i].label != first + i) return false;
  return true;
}

InstantaneousMode build_mode(BoundaryCondition bc, double xm, double L, double v_left, double w, double sign,
                             double mass2, int label, const GaussRule& rule) {
  double am, bm;
  end_condition(bc, w, v_left, am, bm);
  InstantaneousMode mode;
  mode.omega = sign * w;
  mode.k2 = w * w - mass2;
  mode.a = bm;
  mode.b = -am;
  mode.origin = xm;
  mode.label = label;

  double norm = 0.0, ref = 0.0, mid = 0.0;
  for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
    const double x = rule.nodes[p];
    const double v = mode.value(x), d = mode.deriv(x);
    norm += rule.weights[p] * ((mass2 + w * w) * v * v + d * d);
    const double s = (x - xm) / L;
    const double shape = bc == BoundaryCondition::Dirichlet ? std::sin(label * kPi * s) : std::cos(label * kPi * s);
    ref += rule.weights[p] * v * shape;
  }
  mid = mode.value(xm + 0.5 * L);
  double scale = std::sqrt(w / norm);
  // Orient along the rigid-cavity mode with the same label; the midpoint value is the fallback.
  const double oriented = std::abs(ref) > 1e-8 * std::sqrt(norm) * L ? ref : (mid != 0.0 ? mid : mode.deriv(xm + 0.5 * L));
  if (oriented < 0.0) scale = -scale;
  mode.a *= scale;
  mode.b *= scale;
  return mode;
}

}  // namespace

BoundaryTrajectory BoundaryTrajectory::fixed(double x_minus, double x_plus) {
  BoundaryTrajectory t;
  t.x_minus = [x_minus](double) { return x_minus; };
  t.x_plus = [x_plus](double) { return x_plus; };
  t.v_minus = [](double) { return 0.0; };
  t.v_plus = [](double) { return 0.0; };
  return t;
}

void BoundaryTrajectory::validate_at(double t) const {
  if (!x_minus || !x_plus || !v_minus || !v_plus) throw InvalidTrajectory("trajectory is incomplete");
  const double xm = x_minus(t), xp = x_plus(t), vm = v_minus(t), vp = v_plus(t);
  if (!std::isfinite(xm) || !std::isfinite(xp) || !(xp > xm))
    throw InvalidTrajectory("boundaries out of order at t=" + std::to_string(t));
  if (!std::isfinite(vm) || !std::isfinite(vp) || std::abs(vm) >= 1.0 || std::abs(vp) >= 1.0)
    throw InvalidTrajectory("boundary velocity is not timelike at t=" + std::to_string(t));
}

double InstantaneousMode::value(double x) const {
  double C, S;
  cs(k2, x - origin, C, S);
  return a * C + b * S;
}

double InstantaneousMode::deriv(double x) const {
  double C, S;
  cs(k2, x - origin, C, S);
  return -a * k2 * S + b * C;
}

double InstantaneousBasis::min_abs_frequency() const {
  double m = INFINITY;
  for (const auto& p : plus) m = std::min(m, std::abs(p.omega));
  for (const auto& p : minus) m = std::min(m, std::abs(p.omega));
  return m;
}

double characteristic_function(BoundaryCondition bc, double length, double v_minus, double v_plus, double mass2,
                               double omega) {
  return char_fn<double>(bc, length, v_minus, v_plus, mass2, omega);
}

InstantaneousBasis solve_instantaneous_basis(const BoundaryTrajectory& traj, const FieldParams& params,
                                             BoundaryCondition bc, double t, int bands, const SolverOptions& options) {
  if (bands < 1) throw ArgumentError("bands must be >= 1");
  params.validate();
  traj.validate_at(t);
  InstantaneousBasis B;
  B.time = t;
  B.x_minus = traj.x_minus(t);
  B.x_plus = traj.x_plus(t);
  B.v_minus = traj.v_minus(t);
  B.v_plus = traj.v_plus(t);
  const double F = derive_metric_scalars(MetricProfile::flat(1), params).f_term(t);
  B.mass2 = params.mass * params.mass + F;
  const double L = B.x_plus - B.x_minus;
  const GaussRule rule = gauss_legendre(quadrature_points_for(bands, options), B.x_minus, B.x_plus);
  const int first = (bc == BoundaryCondition::Neumann && params.mass > 0.0) ? 0 : 1;

  for (double sign : {1.0, -1.0}) {
    const double vm = sign * B.v_minus, vp = sign * B.v_plus;
    std::string trace;
    std::vector<Root> roots;
    double density = options.bracket_density;
    for (int attempt = 0; attempt < 3; ++attempt, density *= 4.0) {
      trace.clear();
      roots = positive_roots(bc, L, vm, vp, params.mass, B.mass2, bands, density, trace);
      if (labels_complete(roots, first, bands)) break;
    }
    if (!labels_complete(roots, first, bands))
      throw SolverError("root bracketing failed at t=" + std::to_string(t) + ", brackets:" + trace);
    auto& out = sign > 0 ? B.plus : B.minus;
    for (const auto& r : roots) out.push_back(build_mode(bc, B.x_minus, L, vm, r.omega, sign, B.mass2, r.label, rule));
  }
  return B;
}

Eigen::MatrixXd basis_overlaps(const InstantaneousBasis& B, int points) {
  const std::size_t n = 2 * B.bands();
  const GaussRule rule = gauss_legendre(points > 0 ? points : std::max(64, 4 * static_cast<int>(B.bands()) + 32),
                                        B.x_minus, B.x_plus);
  Eigen::MatrixXd vals(rule.nodes.size(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < rule.nodes.size(); ++p) vals(p, i) = B.at(i).value(rule.nodes[p]);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.weights.size());
  return vals.transpose() * w.asDiagonal() * vals;
}

// int [(m^2 + F + w_a w_b) Psi_a Psi_b + Psi_a' Psi_b']
Eigen::MatrixXd basis_norm_matrix(const InstantaneousBasis& B, int points) {
  const std::size_t n = 2 * B.bands();
  const GaussRule rule = gauss_legendre(points > 0 ? points : std::max(64, 4 * static_cast<int>(B.bands()) + 32),
                                        B.x_minus, B.x_plus);
  Eigen::MatrixXd out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = B.at(i);
      const auto& b = B.at(j);
      double s = 0.0;
      for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
        const double x = rule.nodes[p];
        s += rule.weights[p] * ((B.mass2 + a.omega * b.omega) * a.value(x) * b.value(x) + a.deriv(x) * b.deriv(x));
      }
      out(i, j) = s;
    }
  return out;
}

Eigen::MatrixXcd m_matrix(std::size_t bands) {
  const cplx d(0.5, -0.5), o(0.5, 0.5);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * bands, 2 * bands);
  for (std::size_t i = 0; i < bands; ++i) {
    M(i, i) = d;
    M(i, i + bands) = o;
    M(i + bands, i) = o;
    M(i + bands, i + bands) = d;
  }
  return M;
}

Eigen::MatrixXcd vhat_generator(const Eigen::MatrixXd& vhat) {
  const Eigen::MatrixXcd M = m_matrix(vhat.rows() / 2);
  return M * vhat.cast<cplx>() * M.conjugate();
}

namespace {

double aligned_overlap(const InstantaneousMode& a, const InstantaneousMode& b, const GaussRule& rule) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
    const double x = rule.nodes[p], va = a.value(x), vb = b.value(x);
    ab += rule.weights[p] * va * vb;
    aa += rule.weights[p] * va * va;
    bb += rule.weights[p] * vb * vb;
  }
  return ab / std::sqrt(aa * bb);
}

}  // namespace

Eigen::MatrixXd assemble_vhat(const BoundaryTrajectory& traj, const FieldParams& params, BoundaryCondition bc,
                              double t, const InstantaneousBasis& B0, double dt_fd, const SolverOptions& options) {
  if (!(dt_fd > 0.0)) throw ArgumentError("finite-difference step must be positive");
  const int N = static_cast<int>(B0.bands());
  const std::size_t n = 2 * N;
  const GaussRule rule = gauss_legendre(quadrature_points_for(N, options), B0.x_minus, B0.x_plus);

  // Five-point centered stencil: bases at t - 2h, t - h, t + h, t + 2h.
  std::array<InstantaneousBasis, 4> nb;
  const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
  double h = dt_fd;
  for (int attempt = 0;; ++attempt) {
    bool ok = true;
    for (int s = 0; s < 4 && ok; ++s) {
      nb[s] = solve_instantaneous_basis(traj, params, bc, t + offsets[s] * h, N, options);
      for (std::size_t i = 0; i < n && ok; ++i) {
        auto& mode = i < nb[s].plus.size() ? nb[s].plus[i] : nb[s].minus[i - N];
        double c = aligned_overlap(B0.at(i), mode, rule);
        if (c < 0.0) {
          mode.a = -mode.a;
          mode.b = -mode.b;
          c = -c;
        }
        if (mode.label != B0.at(i).label || c < 0.99) ok = false;
      }
    }
    if (ok) break;
    if (attempt == 6)
      throw SolverError("eigenbranch tracking lost near t=" + std::to_string(t) + " even with step " +
                        std::to_string(h));
    h *= 0.5;
  }
  auto ddt = [&](auto&& get) {
    return (get(nb[0]) - 8.0 * get(nb[1]) + 8.0 * get(nb[2]) - get(nb[3])) / (12.0 * h);
  };

  const auto scalars = derive_metric_scalars(MetricProfile::flat(1), params);
  const double q = scalars.q(t), rbar = scalars.r_bar(t), F = scalars.f_term(t);
  const double xi = params.coupling_xi;
  const std::size_t P = rule.nodes.size();

  Eigen::MatrixXd psi(P, n), dpsi(P, n);
  std::vector<double> domega(n);
  std::array<std::vector<double>, 2> edge_val, edge_der, edge_dt;  // [0] left, [1] right
  const double edges[2] = {B0.x_minus, B0.x_plus};
  for (int e = 0; e < 2; ++e) {
    edge_val[e].resize(n);
    edge_der[e].resize(n);
    edge_dt[e].resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m0 = B0.at(i);
    for (std::size_t p = 0; p < P; ++p) {
      const double x = rule.nodes[p];
      psi(p, i) = m0.value(x);
      dpsi(p, i) = ddt([&](const InstantaneousBasis& b) { return b.at(i).value(x); });
    }
    domega[i] = ddt([&](const InstantaneousBasis& b) { return b.at(i).omega; });
    for (int e = 0; e < 2; ++e) {
      edge_val[e][i] = m0.value(edges[e]);
      edge_der[e][i] = m0.deriv(edges[e]);
      edge_dt[e][i] = ddt([&](const InstantaneousBasis& b) { return b.at(i).value(edges[e]); });
    }
  }
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), P);
  const Eigen::MatrixXd S0 = psi.transpose() * w.asDiagonal() * psi;   // int Psi_I Psi_J
  const Eigen::MatrixXd S1 = dpsi.transpose() * w.asDiagonal() * psi;  // int (dPsi_I/dt) Psi_J

  Eigen::MatrixXd V(n, n);
  for (std::size_t I = 0; I < n; ++I)
    for (std::size_t J = 0; J < n; ++J) {
      const double wI = B0.at(I).omega, wJ = B0.at(J).omega;
      const double tau = J < static_cast<std::size_t>(N) ? 1.0 : -1.0;
      double surface;
      if (bc == BoundaryCondition::Neumann) {
        // -sum v_B (dPsi_I/dt) Psi_J, with v_B = +v_plus on the right and -v_minus on the left
        surface = -(B0.v_plus * edge_dt[1][I] * edge_val[1][J] - B0.v_minus * edge_dt[0][I] * edge_val[0][J]);
      } else {
        // (1/w_J) sum (dPsi_I/dt) n.grad Psi_J
        surface = (edge_dt[1][I] * edge_der[1][J] - edge_dt[0][I] * edge_der[0][J]) / wJ;
      }
      double braces = (wI + wJ) * S1(I, J) + (2 * wI * wI + domega[I] - F) * S0(I, J) +
                      (wI * q + xi * rbar) * S0(I, J) + surface;
      V(I, J) = (I == J ? -wJ : 0.0) + tau * braces;
    }
  return V;
}

double bogoliubov_identity_residual(const Eigen::MatrixXcd& U) {
  const std::size_t N = U.rows() / 2;
  const Eigen::MatrixXcd a = U.topLeftCorner(N, N), b = U.topRightCorner(N, N);
  Eigen::MatrixXcd r = a * a.adjoint() - b * b.adjoint() - Eigen::MatrixXcd::Identity(N, N);
  return r.cwiseAbs().maxCoeff();
}

double bogoliubov_identity_residual(const TransformationState& state) { return bogoliubov_identity_residual(state.U); }

TransformationState evolve_transformation(const BoundaryTrajectory& traj, const FieldParams& params,
                                          BoundaryCondition bc, double t0, double tf, int bands, double dt,
                                          const EvolutionOptions& options) {
  if (!(tf > t0)) throw ArgumentError("window must satisfy t0 < tf");
  if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
  const long steps = std::max(1L, std::lround((tf - t0) / dt));
  const double h = (tf - t0) / steps;
  const double fd = options.dt_fd > 0.0 ? options.dt_fd : h / 10.0;
  const std::size_t n = 2 * bands;

  auto generator = [&](double t) {
    InstantaneousBasis B = solve_instantaneous_basis(traj, params, bc, t, bands, options.solver);
    Eigen::MatrixXcd A = vhat_generator(assemble_vhat(traj, params, bc, t, B, fd, options.solver));
    double wmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) wmax = std::max(wmax, std::abs(B.at(i).omega));
    if (wmax * h > 1.5) {
      std::ostringstream os;
      os << "time step " << h << " exceeds the stability limit " << 1.5 / wmax << " for omega_max " << wmax
         << "; use dt <= " << 0.1 / wmax << " for accurate results, or fewer bands";
      throw StabilityError(os.str());
    }
    return std::make_pair(A, B);
  };

  auto [A0, B0] = generator(t0);
  {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A0 * h, false);
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    if (rho > 1.5) {
      std::ostringstream os;
      os << "spectral radius of dt*M V M* is " << rho << " > 1.5; reduce dt or the band count";
      throw StabilityError(os.str());
    }
  }
  Eigen::VectorXd omega_ref(n);
  for (std::size_t i = 0; i < n; ++i) omega_ref[i] = B0.at(i).omega;

  // B(t) = P(t)^* (A - i Omega) P(t), P = exp(i Omega (t - t0))
  auto rotate = [&](const Eigen::MatrixXcd& A, double t) -> Eigen::MatrixXcd {
    if (!options.phase_absorbed) return A;
    Eigen::MatrixXcd Bm = A;
    for (std::size_t i = 0; i < n; ++i) Bm(i, i) -= cplx(0.0, omega_ref[i]);
    const double tau = t - t0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) Bm(i, j) *= std::exp(cplx(0.0, (omega_ref[j] - omega_ref[i]) * tau));
    return Bm;
  };
  auto to_u = [&](const Eigen::MatrixXcd& Y, double t) -> Eigen::MatrixXcd {
    if (!options.phase_absorbed) return Y;
    Eigen::MatrixXcd U = Y;
    for (std::size_t i = 0; i < n; ++i) U.row(i) *= std::exp(cplx(0.0, omega_ref[i] * (t - t0)));
    return U;
  };

  std::vector<double> marks = options.checkpoints;
  std::sort(marks.begin(), marks.end());
  std::size_t next_mark = 0;

  TransformationState st;
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd K_start = rotate(A0, t0);
  auto record = [&](double t) {
    while (next_mark < marks.size() && marks[next_mark] <= t + 0.5 * h) {
      if (marks[next_mark] >= t - 0.5 * h) {
        st.checkpoint_times.push_back(t);
        st.checkpoint_values.push_back(to_u(Y, t));
      }
      ++next_mark;
    }
  };
  record(t0);
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const Eigen::MatrixXcd Kmid = rotate(generator(t + 0.5 * h).first, t + 0.5 * h);
    const Eigen::MatrixXcd Kend = rotate(generator(t + h).first, t + h);
    const Eigen::MatrixXcd k1 = K_start * Y;
    const Eigen::MatrixXcd k2 = Kmid * (Y + 0.5 * h * k1);
    const Eigen::MatrixXcd k3 = Kmid * (Y + 0.5 * h * k2);
    const Eigen::MatrixXcd k4 = Kend * (Y + h * k3);
    Y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    K_start = Kend;
    record(t + h);
  }
  st.U = to_u(Y, tf);
  st.t_current = tf;
  st.step_count = steps;
  return st;
}

}  // namespace bogo
