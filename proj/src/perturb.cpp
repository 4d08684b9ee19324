#include "bogo/perturb.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "bogo/errors.hpp"
#include "bogo/quadrature.hpp"

namespace bogo {

namespace {

constexpr cplx I(0.0, 1.0);

bool all_zero(const HarmonicSum& h) {
  for (const auto& t : h.terms)
    if (t.amplitude != 0.0) return false;
  return true;
}

}  // namespace

void PerturbationSpec::validate(int dim) const {
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw ArgumentError("epsilon must be non-negative");
  if (!all_zero(delta_f)) throw UnsupportedSpec("nonzero Delta F is not supported");
  for (int i = dim; i < 3; ++i)
    if (!laplacian[i].empty()) throw ArgumentError("Delta O acts on an axis the cavity does not have");
  for (const auto& f : delta_x) {
    if (f.axis < 0 || f.axis >= dim || (f.side != 1 && f.side != -1))
      throw ArgumentError("boundary displacement names a face the cavity does not have");
  }
  for (const auto& p : potential)
    if (!p.shape) throw ArgumentError("potential term without a spatial shape");
  if (base_frequency && !(*base_frequency > 0.0)) throw ArgumentError("base frequency must be positive");
}

double PerturbationSpec::displacement(int axis, int side, double t, const double* x) const {
  double s = 0.0;
  for (const auto& f : delta_x)
    if (f.axis == axis && f.side == side) s += f.displacement(t).real() * (f.profile ? f.profile(x) : 1.0);
  return s;
}

PerturbationSpec& PerturbationSpec::operator+=(const PerturbationSpec& other) {
  if (epsilon == 0.0) epsilon = other.epsilon;
  if (other.epsilon != 0.0 && std::abs(other.epsilon - epsilon) > 1e-15 * epsilon)
    throw ArgumentError("summed perturbations must share epsilon");
  for (int i = 0; i < 3; ++i) laplacian[i] += other.laplacian[i];
  potential.insert(potential.end(), other.potential.begin(), other.potential.end());
  delta_r += other.delta_r;
  delta_r_bar += other.delta_r_bar;
  delta_f += other.delta_f;
  delta_x.insert(delta_x.end(), other.delta_x.begin(), other.delta_x.end());
  if (base_frequency != other.base_frequency) base_frequency.reset();
  return *this;
}

std::function<double(const std::vector<double>&)> superoperator_apply(const PerturbationSpec& spec,
                                                                      const StaticBasis& basis, std::size_t n,
                                                                      std::size_t m, Branch sign, double t) {
  if (n >= basis.size() || m >= basis.size()) throw ArgumentError("mode index out of range");
  const StaticMode mode = basis.modes[n];
  const double wn = mode.frequency, wm = basis.modes[m].frequency;
  double factor = 0.0;  // multiplies Psi_n
  for (int i = 0; i < mode.dim(); ++i) factor -= spec.laplacian[i](t).real() * mode.k[i] * mode.k[i];
  factor += wn * (sign == Branch::Plus ? wn + wm : wn - wm) * spec.delta_r(t).real();
  factor += basis.params.coupling_xi * spec.delta_r_bar(t).real();
  std::vector<std::pair<double, SpatialFn>> pots;
  for (const auto& p : spec.potential) pots.emplace_back(p.time(t).real(), p.shape);
  return [mode, factor, pots](const std::vector<double>& x) {
    double psi = eval_mode(mode, x);
    double v = factor;
    for (const auto& [amp, shape] : pots) v += amp * shape(x.data());
    return v * psi;
  };
}

namespace {

class Engine {
 public:
  Engine(const PerturbationSpec& spec, const StaticBasis& basis, const CouplingOptions& opt)
      : spec_(spec), basis_(basis), opt_(opt), dim_(basis.geometry.dim()) {
    spec.validate(dim_);
    for (const auto& f : spec.delta_x) faces_.push_back(make_face(f));
    samples_.resize(faces_.size());
  }

  HarmonicSum coupling(std::size_t n, std::size_t m, bool beta) {
    if (n >= basis_.size() || m >= basis_.size()) throw ArgumentError("mode index out of range");
    const StaticMode& a = basis_.modes[n];
    const StaticMode& b = basis_.modes[m];
    const double wn = a.frequency, wm = b.frequency;
    const double mass2 = basis_.params.mass * basis_.params.mass;
    const cplx pre = beta ? -I : I;
    HarmonicSum out;

    // Volume part: i int [Delta^-_m Psi_n] Psi_m for alpha, -i int [Delta^+_m Psi_n] Psi_m for beta.
    const double S = overlap(n, m);
    for (int i = 0; i < dim_; ++i)
      for (const auto& h : spec_.laplacian[i].terms) out.add(pre * h.amplitude * (-a.k[i] * a.k[i] * S), h.frequency, h.form);
    for (const auto& p : spec_.potential) {
      const double V = potential_integral(p, a, b);
      for (const auto& h : p.time.terms) out.add(pre * h.amplitude * V, h.frequency, h.form);
    }
    const double rfac = wn * (beta ? wn + wm : wn - wm) * S;
    for (const auto& h : spec_.delta_r.terms) out.add(pre * h.amplitude * rfac, h.frequency, h.form);
    for (const auto& h : spec_.delta_r_bar.terms)
      out.add(pre * h.amplitude * (basis_.params.coupling_xi * S), h.frequency, h.form);

    // Surface part.
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      const auto& sa = sample(f, n);
      const auto& sb = sample(f, m);
      const auto& face = faces_[f];
      double G = 0.0, P = 0.0, D = 0.0;
      for (std::size_t p = 0; p < face.w.size(); ++p) {
        double dot = 0.0;
        for (int i = 0; i < dim_; ++i) dot += sa.grad[p * dim_ + i] * sb.grad[p * dim_ + i];
        const double na = sa.grad[p * dim_ + face.axis] * face.side;
        const double nb = sb.grad[p * dim_ + face.axis] * face.side;
        G += face.w[p] * dot;
        P += face.w[p] * sa.val[p] * sb.val[p];
        D += face.w[p] * na * nb;
      }
      for (const auto& h : face.src->displacement.terms) {
        double val;
        if (basis_.bc == BoundaryCondition::Dirichlet) {
          val = -D;  // alpha: -i D, beta: +i D; pre carries the sign flip
        } else {
          const double W2 = h.frequency * h.frequency;
          double mixed = wn * wm;
          if (opt_.resonant) mixed = beta ? 0.5 * (W2 - wn * wn - wm * wm) : 0.5 * (wn * wn + wm * wm - W2);
          val = G + (mass2 + (beta ? mixed : -mixed)) * P;
        }
        out.add(pre * h.amplitude * val, h.frequency, h.form);
      }
    }
    if (opt_.resonant && !beta && n == m) out.terms.clear();
    return out;
  }

 private:
  struct Face {
    int axis, side;
    std::vector<double> pts;  // point-major, dim_ coordinates each
    std::vector<double> w;    // quadrature weight times profile
    const FacePerturbation* src;
  };
  struct Samples {
    std::vector<double> val, grad;
  };

  Face make_face(const FacePerturbation& f) {
    Face face{f.axis, f.side, {}, {}, &f};
    const auto& L = basis_.geometry.lengths;
    std::vector<int> others;
    for (int i = 0; i < dim_; ++i)
      if (i != f.axis) others.push_back(i);
    std::vector<GaussRule> rules;
    for (int i : others) rules.push_back(gauss_legendre(opt_.face_points, -0.5 * L[i], 0.5 * L[i]));
    std::size_t total = 1;
    for (const auto& r : rules) total *= r.nodes.size();
    std::vector<double> x(dim_);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      double w = 1.0;
      x[f.axis] = 0.5 * f.side * L[f.axis];
      for (std::size_t j = 0; j < others.size(); ++j) {
        std::size_t q = rem % rules[j].nodes.size();
        rem /= rules[j].nodes.size();
        x[others[j]] = rules[j].nodes[q];
        w *= rules[j].weights[q];
      }
      if (f.profile) w *= f.profile(x.data());
      face.pts.insert(face.pts.end(), x.begin(), x.end());
      face.w.push_back(w);
    }
    return face;
  }

  const Samples& sample(std::size_t f, std::size_t n) {
    auto& cache = samples_[f];
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const auto& face = faces_[f];
    const auto& mode = basis_.modes[n];
    Samples s;
    const std::size_t P = face.w.size();
    s.val.resize(P);
    s.grad.resize(P * dim_);
    for (std::size_t p = 0; p < P; ++p) {
      s.val[p] = mode.value_at(&face.pts[p * dim_]);
      mode.gradient_at(&face.pts[p * dim_], &s.grad[p * dim_]);
    }
    return cache.emplace(n, std::move(s)).first->second;
  }

  double overlap(std::size_t n, std::size_t m) {
    auto key = std::minmax(n, m);
    auto it = overlaps_.find(key);
    if (it != overlaps_.end()) return it->second;
    double v = mode_overlap(basis_.modes[n], basis_.modes[m], opt_.volume_points);
    overlaps_.emplace(key, v);
    return v;
  }

  double potential_integral(const PotentialTerm& p, const StaticMode& a, const StaticMode& b) const {
    const auto& L = basis_.geometry.lengths;
    std::vector<GaussRule> rules;
    for (int i = 0; i < dim_; ++i) rules.push_back(gauss_legendre(opt_.volume_points, -0.5 * L[i], 0.5 * L[i]));
    std::size_t total = 1;
    for (const auto& r : rules) total *= r.nodes.size();
    std::vector<double> x(dim_);
    double s = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      double w = 1.0;
      for (int j = 0; j < dim_; ++j) {
        std::size_t q = rem % rules[j].nodes.size();
        rem /= rules[j].nodes.size();
        x[j] = rules[j].nodes[q];
        w *= rules[j].weights[q];
      }
      s += w * p.shape(x.data()) * a.value_at(x.data()) * b.value_at(x.data());
    }
    return s;
  }

  const PerturbationSpec& spec_;
  const StaticBasis& basis_;
  CouplingOptions opt_;
  int dim_;
  std::vector<Face> faces_;
  std::vector<std::map<std::size_t, Samples>> samples_;
  std::map<std::pair<std::size_t, std::size_t>, double> overlaps_;
};

void check_bc(const StaticBasis& basis, BoundaryCondition bc) {
  if (basis.bc != bc) throw ArgumentError("boundary condition does not match the basis");
}

}  // namespace

HarmonicSum coupling_alpha(const PerturbationSpec& spec, const StaticBasis& basis, std::size_t n, std::size_t m,
                           BoundaryCondition bc, const CouplingOptions& options) {
  check_bc(basis, bc);
  return Engine(spec, basis, options).coupling(n, m, false);
}

HarmonicSum coupling_beta(const PerturbationSpec& spec, const StaticBasis& basis, std::size_t n, std::size_t m,
                          BoundaryCondition bc, const CouplingOptions& options) {
  check_bc(basis, bc);
  return Engine(spec, basis, options).coupling(n, m, true);
}

void CouplingMatrix::set_envelope(const Envelope& e) {
  for (auto& h : alpha) h.envelope = e;
  for (auto& h : beta) h.envelope = e;
}

CouplingMatrix build_couplings(const PerturbationSpec& spec, const StaticBasis& basis, const CouplingOptions& options) {
  Engine engine(spec, basis, options);
  CouplingMatrix c(basis.size());
  for (std::size_t n = 0; n < basis.size(); ++n)
    for (std::size_t m = 0; m < basis.size(); ++m) {
      c.a(n, m) = engine.coupling(n, m, false);
      c.b(n, m) = engine.coupling(n, m, true);
    }
  return c;
}

const char* to_string(ResonanceKind k) { return k == ResonanceKind::ModeMixing ? "ModeMixing" : "PairCreation"; }

std::vector<Resonance> find_resonances(const StaticBasis& basis, double omega_p, double tolerance) {
  if (!(omega_p > 0.0)) throw ArgumentError("resonance search needs omega_p > 0");
  std::vector<Resonance> out;
  for (std::size_t n = 0; n < basis.size(); ++n)
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const double wn = basis.modes[n].frequency, wm = basis.modes[m].frequency;
      double mix = wn - wm - omega_p, pair = wn + wm - omega_p;
      if (std::abs(mix) <= tolerance) out.push_back({n, m, ResonanceKind::ModeMixing, mix});
      if (std::abs(pair) <= tolerance) out.push_back({n, m, ResonanceKind::PairCreation, pair});
    }
  return out;
}

double identity_residual(const Eigen::MatrixXcd& alpha, const Eigen::MatrixXcd& beta) {
  Eigen::MatrixXcd r = alpha * alpha.adjoint() - beta * beta.adjoint();
  r -= Eigen::MatrixXcd::Identity(r.rows(), r.cols());
  return r.cwiseAbs().maxCoeff();
}

double BogoliubovMatrix::identity_residual() const { return bogo::identity_residual(alpha, beta); }

namespace {

void check_sizes(const CouplingMatrix& c, const StaticBasis& basis) {
  if (c.size != basis.size()) throw ArgumentError("coupling matrix and basis sizes differ");
}

double drive_frequency(const CouplingMatrix& c) {
  double w = 0.0;
  for (const auto& h : c.alpha) w = std::max(w, h.max_frequency());
  for (const auto& h : c.beta) w = std::max(w, h.max_frequency());
  return w;
}

}  // namespace

BogoliubovMatrix bogoliubov_perturbative(const CouplingMatrix& couplings, const StaticBasis& basis, double epsilon,
                                         double t0, double tf) {
  check_sizes(couplings, basis);
  if (!(tf > t0)) throw ArgumentError("window must satisfy t0 < tf");
  const std::size_t N = basis.size();
  BogoliubovMatrix out;
  out.alpha = Eigen::MatrixXcd::Identity(N, N);
  out.beta = Eigen::MatrixXcd::Zero(N, N);
  out.epsilon_used = epsilon;
  out.t0 = t0;
  out.tf = tf;
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t m = 0; m < N; ++m) {
      const double wn = basis.modes[n].frequency, wm = basis.modes[m].frequency;
      if (n != m) out.alpha(n, m) = epsilon * couplings.a(n, m).integrate_against(wn - wm, t0, tf);
      out.beta(n, m) = epsilon * couplings.b(n, m).integrate_against(wn + wm, t0, tf);
    }
  const double wp = drive_frequency(couplings);
  const double dt = tf - t0;
  if (wp > 0.0 && epsilon > 0.0) {
    std::ostringstream msg;
    if (dt < 5.0 / wp) {
      msg << "window " << dt << " is short of the perturbative regime (needs >= " << 5.0 / wp << ")";
      out.warnings.push_back(msg.str());
    } else if (dt > 0.1 / (epsilon * wp)) {
      msg << "window " << dt << " exceeds the first-order validity bound " << 0.1 / (epsilon * wp);
      out.warnings.push_back(msg.str());
    }
  }
  return out;
}

BogoliubovMatrix bogoliubov_asymptotic(const CouplingMatrix& couplings, const StaticBasis& basis, double epsilon) {
  check_sizes(couplings, basis);
  const std::size_t N = basis.size();
  BogoliubovMatrix out;
  out.alpha = Eigen::MatrixXcd::Identity(N, N);
  out.beta = Eigen::MatrixXcd::Zero(N, N);
  out.epsilon_used = epsilon;
  out.asymptotic = true;
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t m = 0; m < N; ++m) {
      const double wn = basis.modes[n].frequency, wm = basis.modes[m].frequency;
      if (n != m) out.alpha(n, m) = epsilon * couplings.a(n, m).transform_against(wn - wm);
      out.beta(n, m) = epsilon * couplings.b(n, m).transform_against(wn + wm);
    }
  return out;
}

}  // namespace bogo
