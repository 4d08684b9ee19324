#include <cmath>
#include <sstream>

#include "bogo/commands.hpp"
#include "bogo/config.hpp"
#include "bogo/errors.hpp"
#include "doctest.h"

using namespace bogo;

namespace {

RunConfig config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::string& command, const RunConfig& cfg) {
  std::ostringstream out, err;
  int code = run_command(command, cfg, out, err);
  return {code, out.str(), err.str()};
}

// |entry| of a complex column for a given (t, n, m) row.
double abs_at(const Table& t, const std::string& col, double time, const std::string& n, const std::string& m) {
  const std::size_t ct = t.column("t"), cn = t.column("n"), cm = t.column("m"), cc = t.column(col);
  for (const auto& r : t.rows)
    if (std::abs(std::get<double>(r[ct]) - time) < 1e-9 && std::get<std::string>(r[cn]) == n &&
        std::get<std::string>(r[cm]) == m)
      return std::abs(std::get<cplx>(r[cc]));
  FAIL("row not found");
  return 0;
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = config("# comment\nscenario = dce-iii\nbc = neumann\n\nintegrator.dt = 0.01  # trailing\nbands=4\n");
  CHECK(c.scenario == "dce-iii");
  CHECK(c.bc == BoundaryCondition::Neumann);
  CHECK(c.dt == 0.01);
  CHECK(c.bands == 4);

  try {
    config("bands = 3\nbandz = 4\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.cfg:2") != std::string::npos);
    CHECK(std::string(e.what()).find("bandz") != std::string::npos);
  }
  try {
    config("epsilon = small\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
  }
  CHECK_THROWS_AS(config("window.t0 = 5\nwindow.tf = 1\n").validate(), ConfigError);
  CHECK_THROWS_AS(config("scenario = dce-iv\n").validate(), ConfigError);
  CHECK_THROWS_AS(config("missing equals sign\n"), ConfigError);
}

TEST_CASE("invalid settings exit with the config code") {
  auto c = config("bands = 0\n");
  auto r = run("spectrum", c);
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("bands") != std::string::npos);
}

TEST_CASE("spectrum tables") {
  auto t = cmd_spectrum(config("bands = 5\n"));
  REQUIRE(t.rows.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(std::get<double>(t.rows[i][t.column("omega")]) == doctest::Approx(i + 1));
  auto g = cmd_spectrum(config("scenario = gw-rigid\ncutoff = 2\n"));
  REQUIRE(g.rows.size() == 1);
  CHECK(std::get<std::string>(g.rows[0][1]) == "(1,1,1)");
  CHECK(std::get<double>(g.rows[0][g.column("omega")]) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("resonance tables") {
  auto t = cmd_resonances(config("bands = 8\n"));
  int pairs = 0;
  for (const auto& r : t.rows) pairs += std::get<std::string>(r[2]) == "PairCreation";
  CHECK(pairs == 2);
  auto none = run("resonances", config("omega_drive = 0.5\n"));
  CHECK(none.code == kExitOk);
  CHECK(cmd_resonances(config("omega_drive = 0.5\n")).rows.empty());
  CHECK(cmd_resonances(config("omega_drive = 0.5\nresonances.tolerance = 0.6\n")).rows.size() > 0);
}

TEST_CASE("perturbative evolve") {
  SUBCASE("zero amplitude leaves the modes untouched") {
    auto t = cmd_evolve(config("epsilon = 0\nbands = 3\n"));
    const std::size_t ca = t.column("alpha"), cb = t.column("beta");
    for (const auto& r : t.rows) {
      CHECK(std::get<cplx>(r[cb]) == cplx(0));
      if (std::get<std::string>(r[1]) != std::get<std::string>(r[2])) CHECK(std::get<cplx>(r[ca]) == cplx(0));
    }
  }
  SUBCASE("resonant pair grows linearly") {
    auto t = cmd_evolve(config("bands = 3\nwindow.tf = 40\nevolve.checkpoints = 2\n"));
    const double b1 = abs_at(t, "beta", 20, "(1)", "(2)"), b2 = abs_at(t, "beta", 40, "(1)", "(2)");
    CHECK(b2 / b1 == doctest::Approx(2.0).epsilon(0.01));
  }
}

TEST_CASE("exact evolve") {
  auto t = cmd_evolve_exact(config("epsilon = 0\nbands = 2\nwindow.tf = 2\nevolve.checkpoints = 1\n"));
  for (const auto& r : t.rows) {
    const bool diag = std::get<std::string>(r[1]) == std::get<std::string>(r[2]);
    CHECK(std::get<double>(r[t.column("abs_alpha")]) == doctest::Approx(diag ? 1.0 : 0.0));
    CHECK(std::get<double>(r[t.column("residual")]) < 1e-10);
  }
  CHECK(t.meta.contains("dt_guidance"));
  CHECK(run("evolve-exact", config("scenario = gw-rigid\n")).code == kExitConfig);
  CHECK(run("evolve-exact", config("integrator.dt = 1\nbands = 12\n")).code == kExitNumerical);
}

TEST_CASE("report formats") {
  auto c = config("bands = 3\nevolve.checkpoints = 2\n");
  SUBCASE("csv is deterministic and keeps full precision") {
    auto a = run("evolve", c), b = run("evolve", c);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("t,n,m,re_alpha,im_alpha,re_beta,im_beta", 0) == 0);
  }
  SUBCASE("json round trip") {
    Table t = cmd_evolve(c);
    Table back = table_from_json(to_json(t));
    CHECK(to_json(back) == to_json(t));
    REQUIRE(back.rows.size() == t.rows.size());
    CHECK(std::get<cplx>(back.rows[5][4]) == std::get<cplx>(t.rows[5][4]));
  }
}

TEST_CASE("validate") {
  auto ok = run("validate", RunConfig{});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("\"passed\": true") != std::string::npos);
  auto bad = run("validate", config("validate.inject_fault = dce_sign\n"));
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("dce_closed_form") != std::string::npos);
}

TEST_CASE("validate sweep reports the identity-residual slope") {
  Table t = cmd_validate(config("validate.sweep = true\n"));
  bool found = false;
  for (const auto& r : t.rows)
    if (std::get<std::string>(r[0]) == "identity_residual_slope") {
      found = true;
      CHECK(std::get<std::string>(r[1]) == "pass");
      CHECK(std::get<double>(r[2]) == doctest::Approx(2.0).epsilon(0.1));
    }
  CHECK(found);
}
