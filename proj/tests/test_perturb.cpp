#include <cmath>
#include <numbers>

#include "bogo/errors.hpp"
#include "bogo/perturb.hpp"
#include "bogo/quadrature.hpp"
#include "bogo/scenarios.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bogo;
using std::numbers::pi;

namespace {
constexpr auto D = BoundaryCondition::Dirichlet;
constexpr auto N = BoundaryCondition::Neumann;
constexpr cplx I(0, 1);

DceConfig dce(DceVariant v, BoundaryCondition bc, double omega = 3.0) {
  DceConfig c;
  c.variant = v;
  c.bc = bc;
  c.omega_drive = omega;
  return c;
}

CouplingOptions resonant() {
  CouplingOptions o;
  o.resonant = true;
  return o;
}

bool same_sum(const HarmonicSum& a, const HarmonicSum& b, double tol) {
  for (const auto& t : a.terms)
    if (std::abs(t.amplitude - b.component(t.frequency, t.form)) > tol * std::max(1.0, std::abs(t.amplitude)))
      return false;
  for (const auto& t : b.terms)
    if (std::abs(t.amplitude - a.component(t.frequency, t.form)) > tol * std::max(1.0, std::abs(t.amplitude)))
      return false;
  return true;
}
}  // namespace

TEST_CASE("superoperator action") {
  auto basis = solve_interval_modes(pi, {0.0, 0.0}, D, 3);
  PerturbationSpec null;
  auto f = superoperator_apply(null, basis, 0, 1, Branch::Plus, 0.3);
  CHECK(f({0.2}) == 0.0);

  auto s = build_dce(dce(DceVariant::RightOnly, D));
  CHECK(superoperator_apply(s.spec, basis, 1, 2, Branch::Minus, 0.9)({-0.4}) == 0.0);

  GwConfig g;
  g.omega_drive = 1.3;
  g.frequency_cutoff = 3.5;
  auto gw = build_gw(g);
  auto box = gw.basis();
  Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = gen.integer(0, static_cast<int>(box.size()) - 1);
    const double t = gen.uniform(0, 10);
    std::vector<double> x{gen.uniform(-1.5, 1.5), gen.uniform(-1.5, 1.5), gen.uniform(-1.5, 1.5)};
    const auto& mode = box.modes[n];
    double expect = std::sin(1.3 * t) * (-mode.k[0] * mode.k[0] + mode.k[1] * mode.k[1]) * eval_mode(mode, x);
    double got = superoperator_apply(gw.spec, box, n, 0, Branch::Plus, t)(x);
    CHECK(std::abs(got - expect) < 1e-12);
  }
  CHECK_THROWS_AS(superoperator_apply(null, basis, 5, 0, Branch::Plus, 0.0), ArgumentError);
}

TEST_CASE("DCE couplings on a pi interval") {
  SUBCASE("Neumann, one moving wall") {
    auto s = build_dce(dce(DceVariant::RightOnly, N));
    auto basis = s.basis(3);
    REQUIRE(basis.modes[0].index[0] == 1);
    auto a = coupling_alpha(s.spec, basis, 0, 1, N, resonant());
    const double C = -1, W = 3;
    cplx expect = I * C * (W * W - 1 - 4) / (4 * std::sqrt(2.0));
    CHECK(std::abs(a.component(W, PhaseForm::Sin) - expect) < 1e-12);
  }
  SUBCASE("Dirichlet, shaking") {
    auto s = build_dce(dce(DceVariant::Shaking, D));
    auto a = coupling_alpha(s.spec, s.basis(3), 0, 1, D, resonant());
    CHECK(std::abs(a.component(3.0, PhaseForm::Sin) - I * std::sqrt(2.0)) < 1e-12);
  }
  SUBCASE("Dirichlet, one moving wall") {
    auto s = build_dce(dce(DceVariant::RightOnly, D));
    auto b = coupling_beta(s.spec, s.basis(3), 0, 1, D, resonant());
    cplx amp = b.component(3.0, PhaseForm::Sin);
    CHECK(std::abs(amp) == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(std::abs(amp - (-I / std::sqrt(2.0))) < 1e-12);
    auto a = coupling_alpha(s.spec, s.basis(3), 0, 1, D, resonant());
    CHECK(std::abs(a.component(3.0, PhaseForm::Sin) + amp) < 1e-12);
  }
}

TEST_CASE("null perturbation gives empty couplings") {
  auto basis = solve_interval_modes(pi, {0.0, 0.0}, N, 3);
  PerturbationSpec null;
  CHECK(coupling_alpha(null, basis, 0, 1, N).empty());
  CHECK(coupling_beta(null, basis, 2, 1, N).empty());
}

TEST_CASE("rigid GW cavity selection rules") {
  for (auto bc : {D, N}) {
    GwConfig g;
    g.bc = bc;
    g.lx = 3.0;
    g.ly = 2.5;
    g.frequency_cutoff = 3.2;
    auto gw = build_gw(g);
    auto box = gw.basis();
    CouplingOptions o = resonant();
    o.face_points = o.volume_points = 16;
    auto cm = build_couplings(gw.spec, box, o);
    for (std::size_t n = 0; n < box.size(); ++n) {
      const auto& idx = box.modes[n].index;
      // A Neumann mode that is uniform along x or y keeps a diagonal term.
      if (idx[0] > 0 && idx[1] > 0) CHECK(std::abs(cm.b(n, n).component(1.0, PhaseForm::Sin)) < 1e-10);
      for (std::size_t m = 0; m < box.size(); ++m)
        if (bc == D && box.modes[n].index[2] != box.modes[m].index[2]) {
          CHECK(std::abs(cm.b(n, m).component(1.0, PhaseForm::Sin)) < 1e-12);
          CHECK(std::abs(cm.a(n, m).component(1.0, PhaseForm::Sin)) < 1e-12);
        }
    }
  }
}

TEST_CASE("surface part of beta is symmetric in its indices") {
  Gen g(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = dce(static_cast<DceVariant>(g.integer(0, 2)), g.coin() ? D : N, g.uniform(0.5, 5));
    c.length = g.uniform(0.5, 5);
    c.mass = g.uniform(0, 2);
    auto s = build_dce(c);
    auto basis = s.basis(6);
    auto cm = build_couplings(s.spec, basis);
    for (std::size_t n = 0; n < 6; ++n)
      for (std::size_t m = 0; m < 6; ++m) CHECK(same_sum(cm.b(n, m), cm.b(m, n), 1e-12));
  }
}

TEST_CASE("couplings are linear in the perturbation") {
  auto a = build_dce(dce(DceVariant::RightOnly, N, 3.0));
  auto b = build_dce(dce(DceVariant::Shaking, N, 2.2));
  PerturbationSpec sum = a.spec;
  sum += b.spec;
  auto basis = a.basis(5);
  auto ca = build_couplings(a.spec, basis), cb = build_couplings(b.spec, basis), cs = build_couplings(sum, basis);
  for (std::size_t n = 0; n < 5; ++n)
    for (std::size_t m = 0; m < 5; ++m) {
      HarmonicSum ea = ca.a(n, m), eb = ca.b(n, m);
      ea += cb.a(n, m);
      eb += cb.b(n, m);
      CHECK(same_sum(cs.a(n, m), ea, 1e-12));
      CHECK(same_sum(cs.b(n, m), eb, 1e-12));
    }
}

TEST_CASE("a metric-determinant source is rejected") {
  auto s = build_dce(dce(DceVariant::RightOnly, D));
  s.spec.delta_f = HarmonicSum::sine(1.0, 2.0);
  CHECK_THROWS_AS(coupling_beta(s.spec, s.basis(2), 0, 1, D), UnsupportedSpec);
}

TEST_CASE("resonance search") {
  auto basis = solve_interval_modes(pi, {0.0, 0.0}, D, 8);
  auto r = find_resonances(basis, 3.0, 1e-9);
  int pairs = 0;
  for (const auto& x : r) {
    const int n = basis.modes[x.n].index[0], m = basis.modes[x.m].index[0];
    if (x.kind == ResonanceKind::PairCreation) {
      ++pairs;
      CHECK(n + m == 3);
    } else {
      CHECK(n - m == 3);
      CHECK(n >= 4);
    }
  }
  CHECK(pairs == 2);
  CHECK(r.size() == 2 + 5);
  CHECK(find_resonances(basis, 0.5, 1e-9).empty());
  auto deg = find_resonances(basis, 2.0, 1e-9);
  bool self = false;
  for (const auto& x : deg) self |= x.kind == ResonanceKind::PairCreation && x.n == 0 && x.m == 0;
  CHECK(self);
  CHECK_THROWS_AS(find_resonances(basis, 0.0, 1e-9), ArgumentError);
}

TEST_CASE("perturbative coefficients") {
  auto basis = solve_interval_modes(pi, {0.0, 0.0}, D, 4);
  SUBCASE("null couplings") {
    CouplingMatrix cm(4);
    auto B = bogoliubov_perturbative(cm, basis, 1e-3, 0, 10);
    CHECK(B.alpha.isApprox(Eigen::MatrixXcd::Identity(4, 4)));
    CHECK(B.beta.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("resonant growth is linear with slope eps |amp| / 2") {
    auto s = build_dce(dce(DceVariant::RightOnly, D, 3.0));
    auto cm = build_couplings(s.spec, basis);
    const double eps = 1e-3;
    const double amp = std::abs(cm.b(0, 1).component(3.0, PhaseForm::Sin));
    double b1 = std::abs(bogoliubov_perturbative(cm, basis, eps, 0, 20).beta(0, 1));
    double b2 = std::abs(bogoliubov_perturbative(cm, basis, eps, 0, 30).beta(0, 1));
    CHECK((b2 - b1) / 10.0 == doctest::Approx(eps * amp / 2).epsilon(0.01));
  }
  SUBCASE("off-resonant coefficients stay bounded") {
    Gen g(33);
    for (int trial = 0; trial < 20; ++trial) {
      const double W = g.uniform(3.3, 4.7);
      auto s = build_dce(dce(DceVariant::RightOnly, D, W));
      auto cm = build_couplings(s.spec, basis);
      const double amp = std::abs(cm.b(0, 1).component(W, PhaseForm::Sin));
      const double t0 = g.uniform(-20, 20), tf = t0 + g.uniform(1, 200);
      auto B = bogoliubov_perturbative(cm, basis, 1e-3, t0, tf);
      CHECK(std::abs(B.beta(0, 1)) <= 2e-3 * amp / std::abs(W - 3.0));
    }
  }
  SUBCASE("validity window warnings") {
    auto s = build_dce(dce(DceVariant::RightOnly, D, 3.0));
    auto cm = build_couplings(s.spec, basis);
    CHECK(bogoliubov_perturbative(cm, basis, 1e-3, 0, 10).warnings.empty());
    CHECK(bogoliubov_perturbative(cm, basis, 1e-3, 0, 1).warnings.size() == 1);
    CHECK(bogoliubov_perturbative(cm, basis, 1e-1, 0, 10).warnings.size() == 1);
  }
}

TEST_CASE("asymptotic coefficients with an envelope") {
  auto basis = solve_interval_modes(pi, {0.0, 0.0}, D, 3);
  auto s = build_dce(dce(DceVariant::RightOnly, D, 3.0));
  auto cm = build_couplings(s.spec, basis);
  CHECK_THROWS_AS(bogoliubov_asymptotic(cm, basis, 1e-3), UnsupportedSpec);

  const double sigma = 4.0, eps = 1e-3;
  cm.set_envelope({Envelope::Kind::Gaussian, sigma, 0.0});
  auto B = bogoliubov_asymptotic(cm, basis, eps);
  // Direct quadrature of eps * int e^{-i (w1 + w2) t} env(t) beta_12(t) dt.
  const HarmonicSum& h = cm.b(0, 1);
  cplx ref = 0;
  for (int p = 0; p < 400; ++p) {
    auto rule = gauss_legendre(16, -12 * sigma + p * 24 * sigma / 400, -12 * sigma + (p + 1) * 24 * sigma / 400);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      ref += rule.weights[i] * std::exp(cplx(0, -3.0 * rule.nodes[i])) * h(rule.nodes[i]);
  }
  ref *= eps;
  CHECK(rel_err(B.beta(0, 1), ref) < 1e-9);
  const double amp = std::abs(h.component(3.0, PhaseForm::Sin));
  CHECK(std::abs(B.beta(0, 1)) == doctest::Approx(eps * amp * sigma * std::sqrt(pi / 2)).epsilon(1e-6));

  // Far detuned pair: (1,3) has w1 + w3 = 4, a detuning of 1 = many times 1/sigma.
  const double amp13 = std::abs(cm.b(0, 2).component(3.0, PhaseForm::Sin));
  CHECK(std::abs(B.beta(0, 2)) < eps * amp13 * sigma * std::exp(-sigma * sigma / 4));

  CouplingMatrix zero(3);
  zero.set_envelope({Envelope::Kind::Gaussian, sigma, 0.0});
  auto Z = bogoliubov_asymptotic(zero, basis, eps);
  CHECK(Z.beta.cwiseAbs().maxCoeff() == 0.0);
  CHECK(Z.alpha.isApprox(Eigen::MatrixXcd::Identity(3, 3)));
}

TEST_CASE("identity residual") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(3, 3), b = Eigen::MatrixXcd::Zero(3, 3);
  CHECK(identity_residual(a, b) == 0.0);
  a(1, 1) = std::exp(cplx(0, 0.7));
  CHECK(identity_residual(a, b) < 1e-15);
}
