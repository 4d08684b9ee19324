#include "bogo/commands.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "bogo/errors.hpp"
#include "bogo/quadrature.hpp"

namespace bogo {

namespace {

constexpr double kPi = 3.141592653589793;

nlohmann::ordered_json base_meta(const std::string& command, const RunConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["command"] = command;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.resolved()) c[k] = v;
  meta["config"] = c;
  meta["warnings"] = nlohmann::ordered_json::array();
  return meta;
}

StaticBasis basis_for(const RunConfig& cfg) {
  if (cfg.is_dce()) return solve_interval_modes(cfg.length, {cfg.mass, 0.0}, cfg.bc, cfg.bands);
  return build_gw(cfg.gw()).basis();
}

PerturbationSpec spec_for(const RunConfig& cfg) {
  if (cfg.is_dce()) return build_dce(cfg.dce()).spec;
  return build_gw(cfg.gw()).spec;
}

CouplingOptions coupling_options(const RunConfig& cfg) {
  CouplingOptions o;
  o.volume_points = cfg.quadrature_points;
  o.face_points = cfg.quadrature_points;
  return o;
}

std::vector<double> checkpoint_times(const RunConfig& cfg) {
  std::vector<double> t;
  for (int j = 1; j <= cfg.checkpoints; ++j) t.push_back(cfg.t0 + (cfg.tf - cfg.t0) * j / cfg.checkpoints);
  return t;
}

// Relative error with an absolute floor for entries that should both vanish.
double mismatch(cplx got, cplx want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  return scale < 1e-10 ? std::abs(got - want) : std::abs(got - want) / scale;
}

double worst_mismatch(const HarmonicSum& got, const HarmonicSum& want) {
  std::set<std::pair<double, int>> keys;
  for (const auto* h : {&got, &want})
    for (const auto& t : h->terms) keys.insert({t.frequency, static_cast<int>(t.form)});
  double worst = 0.0;
  for (const auto& [w, f] : keys)
    worst = std::max(worst, mismatch(got.component(w, PhaseForm(f)), want.component(w, PhaseForm(f))));
  return worst;
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

Check check_dce_closed_form(const RunConfig& cfg) {
  double worst = 0.0;
  const double sign = cfg.inject_fault == "dce_sign" ? -1.0 : 1.0;
  for (auto v : {DceVariant::RightOnly, DceVariant::Breathing, DceVariant::Shaking})
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
      DceConfig d;
      d.variant = v;
      d.bc = bc;
      d.length = cfg.length;
      d.mass = cfg.mass;
      d.epsilon = cfg.epsilon > 0.0 ? cfg.epsilon : 1e-3;
      d.omega_drive = cfg.omega_drive;
      const DceScenario s = build_dce(d);
      const StaticBasis B = s.basis(cfg.bands);
      CouplingOptions o = coupling_options(cfg);
      o.resonant = true;
      const CouplingMatrix cm = build_couplings(s.spec, B, o);
      for (std::size_t n = 0; n < B.size(); ++n)
        for (std::size_t m = 0; m < B.size(); ++m) {
          worst = std::max(worst, worst_mismatch(cm.a(n, m), s.predictor.alpha(B.modes[n], B.modes[m])));
          worst = std::max(worst,
                           worst_mismatch(cm.b(n, m), s.predictor.beta(B.modes[n], B.modes[m]).scaled(sign)));
        }
    }
  return {"dce_closed_form", worst, 1e-8, worst < 1e-8};
}

std::pair<Check, Check> check_gw_closed_form(const RunConfig& cfg) {
  double worst = 0.0, diag = 0.0;
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    GwConfig g = cfg.gw();
    g.bc = bc;
    g.epsilon = g.epsilon > 0.0 ? g.epsilon : 1e-3;
    // big enough to hold every index up to 3
    g.frequency_cutoff = std::sqrt(27.0) * kPi / std::min({g.lx, g.ly, g.lz}) * 1.0000001 + g.mass;
    const GwScenario s = build_gw(g);
    const StaticBasis B = s.basis();
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < B.size(); ++i) {
      const auto& idx = B.modes[i].index;
      if (idx[0] >= 1 && idx[0] <= 3 && idx[1] >= 1 && idx[1] <= 3 && idx[2] >= 1 && idx[2] <= 3) block.push_back(i);
    }
    CouplingOptions o;
    o.resonant = true;
    o.volume_points = 24;
    o.face_points = 24;
    for (std::size_t n : block)
      for (std::size_t m : block) {
        const auto &a = B.modes[n], &b = B.modes[m];
        const HarmonicSum qa = coupling_alpha(s.spec, B, n, m, bc, o), qb = coupling_beta(s.spec, B, n, m, bc, o);
        worst = std::max({worst, worst_mismatch(qa, s.predictor.alpha(a, b)), worst_mismatch(qb, s.predictor.beta(a, b))});
        if (n == m) diag = std::max(diag, std::abs(qb.component(g.omega_drive, PhaseForm::Sin)));
      }
  }
  return {{"gw_closed_form", worst, 1e-8, worst < 1e-8}, {"gw_diagonal_cancellation", diag, 1e-10, diag < 1e-10}};
}

Check check_orthonormality(const RunConfig& cfg) {
  const FieldParams p{cfg.mass, 0.0};
  double r = 0.0;
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    r = std::max(r, orthonormality_residual(solve_interval_modes(cfg.length, p, bc, cfg.bands)));
    r = std::max(r, orthonormality_residual(
                        solve_box_modes(CavityGeometry::box(cfg.lx, cfg.ly, cfg.lz), p, bc, cfg.cutoff + 2.0), 32));
  }
  return {"orthonormality", r, 1e-10, r < 1e-10};
}

Check check_static_limit(const RunConfig& cfg) {
  const FieldParams p{cfg.mass, 0.0};
  double worst = 0.0;
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const StaticBasis S = solve_interval_modes(cfg.length, p, bc, cfg.bands);
    const auto tr = BoundaryTrajectory::fixed(-0.5 * cfg.length, 0.5 * cfg.length);
    const InstantaneousBasis B = solve_instantaneous_basis(tr, p, bc, 0.0, cfg.bands);
    for (int i = 0; i < cfg.bands; ++i)
      worst = std::max(worst, std::abs(B.plus[i].omega - S.modes[i].frequency) / S.modes[i].frequency);
    const Eigen::MatrixXcd A = vhat_generator(assemble_vhat(tr, p, bc, 0.0, B, 1e-3));
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) expect(i, i) = cplx(0.0, B.at(i).omega);
    worst = std::max(worst, (A - expect).cwiseAbs().maxCoeff() / B.plus.back().omega);
  }
  return {"static_limit", worst, 1e-10, worst < 1e-10};
}

// Resonant Fourier component of the exact generator against the first-order coupling.
Check check_generator_vs_couplings(const RunConfig& cfg) {
  const int N = 4;
  DceConfig d;
  d.bc = BoundaryCondition::Dirichlet;
  d.length = cfg.length;
  d.mass = cfg.mass;
  d.epsilon = 1e-3;
  const StaticBasis B0 = solve_interval_modes(d.length, {d.mass, 0.0}, d.bc, N);
  d.omega_drive = B0.modes[0].frequency + B0.modes[1].frequency;
  const DceScenario s = build_dce(d);
  const CouplingMatrix cm = build_couplings(s.spec, B0);
  const double T = 3.0 * 2.0 * kPi / d.omega_drive;
  const GaussRule rule = gauss_legendre(240, 0.0, T);
  cplx proj = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const InstantaneousBasis B = solve_instantaneous_basis(s.trajectory, s.params(), d.bc, t, N);
    const Eigen::MatrixXcd A = vhat_generator(assemble_vhat(s.trajectory, s.params(), d.bc, t, B, 1e-3));
    proj += rule.weights[q] * A(0, N + 1) * std::exp(cplx(0.0, -d.omega_drive * t));
  }
  proj /= T;
  const cplx want = d.epsilon * cm.b(0, 1).integrate_against(d.omega_drive, 0.0, T) / T;
  const double err = std::abs(proj - want);
  return {"generator_vs_couplings", err, 1e-2 * d.epsilon, err < 1e-2 * d.epsilon};
}

Check check_identity_scaling(const RunConfig& cfg) {
  const double tf = 50.0 / 3.0;
  std::vector<double> r;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    DceConfig d;
    d.bc = BoundaryCondition::Dirichlet;
    d.length = cfg.length;
    d.mass = cfg.mass;
    d.epsilon = e;
    d.omega_drive = 3.0 * kPi / cfg.length;
    d.ramp = Ramp{0.0, tf, 3.0};
    const DceScenario s = build_dce(d);
    EvolutionOptions o;
    o.dt_fd = 1e-3;
    r.push_back(bogoliubov_identity_residual(evolve_transformation(s.trajectory, s.params(), d.bc, 0.0, tf, 6, 0.05, o)));
  }
  const double slope = (std::log10(r[0]) - std::log10(r[2])) / 2.0;
  return {"identity_residual_slope", slope, 0.2, std::abs(slope - 2.0) <= 0.2};
}

std::vector<Cell> pair_prefix(double t, const std::string& n, const std::string& m) { return {t, n, m}; }

}  // namespace

Table cmd_spectrum(const RunConfig& cfg) {
  cfg.validate();
  const StaticBasis B = basis_for(cfg);
  Table t;
  t.meta = base_meta("spectrum", cfg);
  t.columns = {{"position", ColumnType::Integer}, {"label", ColumnType::Text}};
  const int dim = B.geometry.dim();
  const char* axes[] = {"k_x", "k_y", "k_z"};
  for (int i = 0; i < dim; ++i) t.columns.push_back({axes[i], ColumnType::Real});
  t.columns.push_back({"omega", ColumnType::Real});
  for (std::size_t i = 0; i < B.size(); ++i) {
    std::vector<Cell> row{static_cast<long long>(i), B.modes[i].label()};
    for (int a = 0; a < dim; ++a) row.emplace_back(B.modes[i].k[a]);
    row.emplace_back(B.modes[i].frequency);
    t.add_row(std::move(row));
  }
  return t;
}

Table cmd_resonances(const RunConfig& cfg) {
  cfg.validate();
  const StaticBasis B = basis_for(cfg);
  Table t;
  t.meta = base_meta("resonances", cfg);
  t.columns = {{"n", ColumnType::Text}, {"m", ColumnType::Text}, {"kind", ColumnType::Text}, {"detuning", ColumnType::Real}};
  for (const auto& r : find_resonances(B, cfg.omega_drive, cfg.tolerance))
    t.add_row({B.modes[r.n].label(), B.modes[r.m].label(), std::string(to_string(r.kind)), r.detuning});
  return t;
}

Table cmd_evolve(const RunConfig& cfg) {
  cfg.validate();
  const StaticBasis B = basis_for(cfg);
  const CouplingMatrix cm = build_couplings(spec_for(cfg), B, coupling_options(cfg));
  Table t;
  t.meta = base_meta("evolve", cfg);
  t.columns = {{"t", ColumnType::Real},         {"n", ColumnType::Text},         {"m", ColumnType::Text},
               {"alpha", ColumnType::Complex},  {"beta", ColumnType::Complex},   {"abs_alpha", ColumnType::Real},
               {"abs_beta", ColumnType::Real},  {"arg_alpha", ColumnType::Real}, {"arg_beta", ColumnType::Real}};
  std::set<std::string> warnings;
  for (double tc : checkpoint_times(cfg)) {
    const BogoliubovMatrix bm = bogoliubov_perturbative(cm, B, cfg.epsilon, cfg.t0, tc);
    if (tc == cfg.tf) warnings.insert(bm.warnings.begin(), bm.warnings.end());
    for (std::size_t n = 0; n < B.size(); ++n)
      for (std::size_t m = 0; m < B.size(); ++m) {
        const cplx a = bm.alpha(n, m), b = bm.beta(n, m);
        auto row = pair_prefix(tc, B.modes[n].label(), B.modes[m].label());
        row.insert(row.end(), {a, b, std::abs(a), std::abs(b), std::arg(a), std::arg(b)});
        t.add_row(std::move(row));
      }
  }
  for (const auto& w : warnings) t.meta["warnings"].push_back(w);
  return t;
}

Table cmd_evolve_exact(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.is_dce()) throw UnsupportedSpec("evolve-exact handles one-dimensional scenarios only; gw-rigid is 3D");
  const DceScenario s = build_dce(cfg.dce());
  EvolutionOptions o;
  o.dt_fd = cfg.dt_fd;
  o.checkpoints = checkpoint_times(cfg);
  o.solver.quadrature_points = cfg.quadrature_points;
  const TransformationState st =
      evolve_transformation(s.trajectory, s.params(), cfg.bc, cfg.t0, cfg.tf, cfg.bands, cfg.dt, o);
  const InstantaneousBasis B = solve_instantaneous_basis(s.trajectory, s.params(), cfg.bc, cfg.t0, cfg.bands);
  Table t;
  t.meta = base_meta("evolve-exact", cfg);
  for (const auto& w : s.warnings) t.meta["warnings"].push_back(w);
  t.meta["steps"] = st.step_count;
  // Conservative step for the unabsorbed integrator; phase absorption tolerates larger steps.
  t.meta["dt_guidance"] = 0.1 / std::abs(B.plus.back().omega);
  t.columns = {{"t", ColumnType::Real},        {"n", ColumnType::Text},        {"m", ColumnType::Text},
               {"alpha", ColumnType::Complex}, {"beta", ColumnType::Complex},  {"abs_alpha", ColumnType::Real},
               {"abs_beta", ColumnType::Real}, {"residual", ColumnType::Real}};
  const std::size_t N = cfg.bands;
  for (std::size_t c = 0; c < st.checkpoint_times.size(); ++c) {
    const Eigen::MatrixXcd& U = st.checkpoint_values[c];
    const double res = bogoliubov_identity_residual(U);
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t m = 0; m < N; ++m) {
        const cplx a = U(n, m), b = U(n, m + N);
        auto row = pair_prefix(st.checkpoint_times[c], "(" + std::to_string(B.plus[n].label) + ")",
                               "(" + std::to_string(B.plus[m].label) + ")");
        row.insert(row.end(), {a, b, std::abs(a), std::abs(b), res});
        t.add_row(std::move(row));
      }
  }
  return t;
}

Table cmd_validate(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Check> checks;
  checks.push_back(check_dce_closed_form(cfg));
  auto [gw, diag] = check_gw_closed_form(cfg);
  checks.push_back(gw);
  checks.push_back(diag);
  checks.push_back(check_orthonormality(cfg));
  checks.push_back(check_static_limit(cfg));
  checks.push_back(check_generator_vs_couplings(cfg));
  if (cfg.sweep) checks.push_back(check_identity_scaling(cfg));

  Table t;
  t.meta = base_meta("validate", cfg);
  t.columns = {{"check", ColumnType::Text}, {"status", ColumnType::Text}, {"value", ColumnType::Real},
               {"tolerance", ColumnType::Real}};
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    t.add_row({c.name, std::string(c.passed ? "pass" : "fail"), c.value, c.tolerance});
  }
  t.meta["passed"] = all;
  return t;
}

int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Table t;
    if (command == "spectrum") t = cmd_spectrum(cfg);
    else if (command == "resonances") t = cmd_resonances(cfg);
    else if (command == "evolve") t = cmd_evolve(cfg);
    else if (command == "evolve-exact") t = cmd_evolve_exact(cfg);
    else if (command == "validate") t = cmd_validate(cfg);
    else throw ConfigError("unknown command '" + command + "'");

    const bool json = cfg.format == "json" || (command == "validate" && !cfg.format_explicit);
    if (json) write_json(t, out);
    else write_csv(t, out);
    for (const auto& w : t.meta["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
    if (command == "validate" && !t.meta["passed"].get<bool>()) {
      for (const auto& row : t.rows)
        if (std::get<std::string>(row[1]) == "fail") err << "check failed: " << std::get<std::string>(row[0]) << '\n';
      return kExitValidation;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Argument:
      case ErrorKind::Config: return kExitConfig;
      case ErrorKind::Numerical: return kExitNumerical;
      case ErrorKind::Validation: return kExitValidation;
    }
    return kExitNumerical;
  }
}

}  // namespace bogo
