#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pmc/io.hpp"
#include "pmc/util.hpp"

using namespace pmc;

namespace {
std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("config parsing and validation") {
  std::string path = tmp_path("pmc_cfg.json");
  {
    std::ofstream out(path);
    out << R"({
      "n": 4, "grid_m": 128, "kmax": 64,
      "profile": {"name": "two_bump", "params": {"alpha": 1.5, "a": 0.5}},
      "p_frac": 0.95,
      "solver": {"path_nodes": 17, "tol_mp": 1e-5},
      "out_dir": "outdir"
    })";
  }
  RunConfig c = load_config(path);
  CHECK(c.n == 4);
  CHECK(c.grid_m == 128);
  CHECK(c.profile.params.at("alpha") == 1.5);
  CHECK(c.solver.path_nodes == 17);
  CHECK_NOTHROW(validate_config(c));
  CHECK(resolve_p(c) == doctest::Approx(0.95 * 2.0));

  c.n = 2;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.n = 4;
  c.p = 3.0;  // above the critical exponent
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("missing config file and malformed json") {
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), ConfigError);
  std::string path = tmp_path("pmc_bad.json");
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("profile construction from spec") {
  ProfileSpec spec;
  spec.name = "two_bump";
  spec.params = {{"alpha", 1.5}, {"a", 0.5}};
  CurvatureProfile prof = make_profile(spec);
  CHECK(prof.h(0) == doctest::Approx(1.0));

  ProfileSpec bad;
  bad.name = "unknown";
  CHECK_THROWS_AS(make_profile(bad), ConfigError);

  ProfileSpec tab;
  tab.name = "table";
  CHECK_THROWS_AS(make_profile(tab), ConfigError);
  for (int i = 0; i <= 100; ++i) {
    tab.table_r.push_back(M_PI * i / 100);
    tab.table_h.push_back(1.0 + 0.3 * std::cos(2 * M_PI * i / 100.0));
  }
  CHECK_NOTHROW(make_profile(tab));
}

TEST_CASE("schedule resolution") {
  RunConfig c;
  c.n = 4;
  CHECK_THROWS_AS(resolve_schedule(c), ConfigError);
  c.p_frac_schedule = {0.9, 0.95};
  auto s = resolve_schedule(c);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == doctest::Approx(1.8));
}

TEST_CASE("emitted solution files round-trip the recorded residual") {
  // tiny homogeneous solve through the library, then re-read and recompute
  const int n = 3, m = 96;
  RadialGrid g = make_grid(n, m);
  ZonalBasis b = make_basis(g, m - 1);
  CurvatureProfile prof = builtin_profile("constant");
  GridFn h(g.size(), 1.0);
  const double p = 0.9 * critical_exponent(n);
  SolverConfig cfg;
  cfg.path_nodes = 9;
  Endpoints ep = make_endpoints(prof, p, g, b, cfg);
  MountainPassResult res = mountain_pass(prof, p, ep.psi1, ep.psi2, g, b, cfg);
  REQUIRE(res.converged);

  GridFn w = rescale_to_solution(res.u_star, res.mu, p);
  GridFn resc = residual(w, h, p, 1.0, g, b);
  double recorded = max_abs(resc);

  std::string path = tmp_path("pmc_solution.csv");
  write_solution_csv(path, g, res.u_star, w, resc);
  CsvTable t = read_csv(path);
  REQUIRE(t.rows.size() == g.size());
  REQUIRE(t.header.size() == 4);

  GridFn w_read(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(t.rows[j][0] == g.r[j]);  // 17 digits round-trip bit-exactly
    w_read[j] = t.rows[j][2];
  }
  GridFn resc2 = residual(w_read, h, p, 1.0, g, b);
  CHECK(std::abs(max_abs(resc2) - recorded) < 1e-10);
  std::filesystem::remove(path);
}

TEST_CASE("summary json carries the schema tag") {
  RunConfig c;
  MountainPassResult res;
  res.u_star.assign(4, 1.0);
  std::string js = solve_summary_json(c, 1.9, res, 0.0, 1.0);
  CHECK(js.find("\"schema\": 1") != std::string::npos);
  ContinuationReport rep;
  CHECK(continuation_summary_json(c, rep).find("\"schema\": 1") !=
        std::string::npos);
}
