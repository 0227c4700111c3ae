// Batch front end: verification suite, single mountain-pass solves,
// subcritical continuation sweeps and curvature-condition reports.
//
// Exit codes: 0 success, 1 configuration error, 2 verification failure,
// 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "pmc/io.hpp"
#include "pmc/kernels.hpp"
#include "pmc/util.hpp"
#include "pmc/verify.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  int n = 0;
  int grid_m = 0;
  int kmax = -1;
  std::vector<std::string> profile;  // name followed by key=value pairs
  double p = 0, p_frac = 0;
  std::vector<double> p_schedule, p_frac_schedule;
  bool serial = false;
};

void add_common(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--n", o.n, "ambient dimension (>= 3)");
  cmd->add_option("--grid", o.grid_m, "quadrature node count");
  cmd->add_option("--kmax", o.kmax, "zonal basis cutoff");
  cmd->add_option("--profile", o.profile,
                  "profile name followed by key=value parameters")
      ->expected(-1);
  cmd->add_flag("--serial", o.serial, "force the serial kernels");
}

pmc::RunConfig build_config(const CliOverrides& o) {
  pmc::RunConfig c;
  if (!o.config_path.empty()) c = pmc::load_config(o.config_path);
  if (!o.out_dir.empty()) c.out_dir = o.out_dir;
  if (o.n > 0) c.n = o.n;
  if (o.grid_m > 0) c.grid_m = o.grid_m;
  if (o.kmax >= 0) c.kmax = o.kmax;
  if (!o.profile.empty()) {
    c.profile.name = o.profile.front();
    c.profile.params.clear();
    for (std::size_t i = 1; i < o.profile.size(); ++i) {
      auto eq = o.profile[i].find('=');
      if (eq == std::string::npos)
        throw pmc::ConfigError("profile parameters must be key=value: " +
                               o.profile[i]);
      c.profile.params[o.profile[i].substr(0, eq)] =
          std::stod(o.profile[i].substr(eq + 1));
    }
  }
  if (o.p > 0) c.p = o.p;
  if (o.p_frac > 0) c.p_frac = o.p_frac;
  if (!o.p_schedule.empty()) c.p_schedule = o.p_schedule;
  if (!o.p_frac_schedule.empty()) c.p_frac_schedule = o.p_frac_schedule;
  if (o.serial) pmc::kernels::set_default_backend(pmc::kernels::Backend::Serial);
  pmc::validate_config(c);
  std::filesystem::create_directories(c.out_dir);
  return c;
}

int run_verify(const CliOverrides& o) {
  pmc::RunConfig c = build_config(o);
  pmc::checks::VerifyOptions vo;
  vo.n = c.n;
  vo.grid_m = c.grid_m;
  vo.kmax = c.kmax;
  auto results = pmc::checks::run_verification(vo);
  int fails = 0;
  std::printf("%-42s %-6s %-12s %-12s\n", "check", "state", "measured", "threshold");
  for (const auto& r : results) {
    const char* state = r.pass ? "PASS" : (r.warn_only ? "WARN" : "FAIL");
    if (!r.pass && !r.warn_only) ++fails;
    std::printf("%-42s %-6s %-12.4g %-12.4g %s\n", r.name.c_str(), state,
                r.measured, r.threshold, r.detail.c_str());
  }
  std::printf("%d checks, %d failed\n", static_cast<int>(results.size()), fails);
  return fails == 0 ? 0 : 2;
}

int run_kwcheck(const CliOverrides& o, pmc::RunConfig* out_cfg = nullptr,
                std::string* out_json = nullptr) {
  pmc::RunConfig c = build_config(o);
  pmc::CurvatureProfile prof = pmc::make_profile(c.profile);
  pmc::KWReport kw = pmc::kazdan_warner_check(prof);
  auto r0s = pmc::detect_critical_points(prof);
  std::vector<pmc::FlatnessFit> fits;
  for (double r0 : r0s) fits.push_back(pmc::flatness_fit(prof, r0, c.n));
  std::string js = pmc::kwcheck_json(c, prof, kw, fits, r0s);
  pmc::write_text_file(c.out_dir + "/kwcheck.json", js);
  std::printf("kazdan-warner: %s\n", kw.holds ? "holds" : "violated");
  for (std::size_t i = 0; i < r0s.size(); ++i)
    std::printf("  r0 = %.6f  alpha = %.4f  admissible = %s%s\n", r0s[i],
                fits[i].alpha_hat, fits[i].admissible ? "yes" : "no",
                fits[i].degenerate ? "  (degenerate fit)" : "");
  std::printf("report: %s/kwcheck.json\n", c.out_dir.c_str());
  if (out_cfg) *out_cfg = c;
  if (out_json) *out_json = js;
  return 0;
}

int run_solve(const CliOverrides& o) {
  pmc::RunConfig c = build_config(o);
  const double p = pmc::resolve_p(c);
  pmc::CurvatureProfile prof = pmc::make_profile(c.profile);

  pmc::KWReport kw = pmc::kazdan_warner_check(prof);
  if (!kw.holds)
    std::fprintf(stderr,
                 "warning: the sign condition fails for this profile (h' does "
                 "not change sign where h > 0); a solution may not exist\n");

  pmc::RadialGrid g = pmc::make_grid(c.n, c.grid_m);
  pmc::ZonalBasis b = pmc::make_basis(g, c.grid_m - 1);
  pmc::SolverConfig scfg = c.solver;
  scfg.rho0 = c.rho0 > 0 ? c.rho0 : scfg.rho0;

  pmc::Endpoints ep = pmc::make_endpoints(prof, p, g, b, scfg);
  pmc::MountainPassResult res = pmc::mountain_pass(prof, p, ep.psi1, ep.psi2, g, b, scfg);

  pmc::GridFn h(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) h[j] = prof.h(g.r[j]);
  pmc::GridFn w, resc;
  double resc_max = 0, sup = 0;
  if (res.mu > 0) {
    w = pmc::rescale_to_solution(res.u_star, res.mu, p);
    resc = pmc::residual(w, h, p, 1.0, g, b);
    resc_max = pmc::max_abs(resc);
    sup = pmc::sup_norm(w, g, b);
  } else {
    w.assign(g.size(), 0.0);
    resc.assign(g.size(), 0.0);
  }

  pmc::write_solution_csv(c.out_dir + "/solution.csv", g, res.u_star, w, resc);
  pmc::write_text_file(c.out_dir + "/summary.json",
                       pmc::solve_summary_json(c, p, res, resc_max, sup));
  std::printf("c_p = %.12g  mu = %.12g  residual = %.3g  rescaled residual = %.3g\n",
              res.cp, res.mu, res.residual_max, resc_max);
  std::printf("outputs: %s/solution.csv, %s/summary.json\n", c.out_dir.c_str(),
              c.out_dir.c_str());
  if (!res.converged) {
    std::fprintf(stderr, "solver did not converge: %s\n", res.message.c_str());
    return 3;
  }
  return 0;
}

int run_continue(const CliOverrides& o) {
  pmc::RunConfig c = build_config(o);
  auto schedule = pmc::resolve_schedule(c);
  pmc::CurvatureProfile prof = pmc::make_profile(c.profile);
  pmc::KWReport kw = pmc::kazdan_warner_check(prof);
  if (!kw.holds)
    std::fprintf(stderr,
                 "warning: the sign condition fails for this profile; expect "
                 "concentration as p approaches the critical exponent\n");

  pmc::RadialGrid g = pmc::make_grid(c.n, c.grid_m);
  pmc::ZonalBasis b = pmc::make_basis(g, c.grid_m - 1);
  pmc::SolverConfig scfg = c.solver;
  scfg.rho0 = c.rho0 > 0 ? c.rho0 : scfg.rho0;

  pmc::ContinuationReport rep = pmc::continuation(prof, schedule, g, b, scfg);
  pmc::write_continuation_csv(c.out_dir + "/continuation.csv", rep);
  pmc::write_text_file(c.out_dir + "/summary.json",
                       pmc::continuation_summary_json(c, rep));
  for (const auto& s : rep.steps)
    std::printf("p = %-10.6g c_p = %-12.6g sup = %-12.6g lambda* = %-10.4g %s\n",
                s.p, s.cp, s.sup_norm, s.lambda_star,
                s.converged ? "" : "[failed]");
  if (rep.concentration_flag)
    std::printf("CONCENTRATION flag raised at step %d\n", rep.flag_index);
  std::printf("outputs: %s/continuation.csv, %s/summary.json\n",
              c.out_dir.c_str(), c.out_dir.c_str());
  bool all_ok = true;
  for (const auto& s : rep.steps) all_ok = all_ok && s.converged;
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral solver for the prescribed mean curvature boundary problem on the ball"};
  app.require_subcommand(1);

  CliOverrides ov, os, oc, ok;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify, ov);
  CLI::App* solve = app.add_subcommand("solve", "single mountain-pass solve");
  add_common(solve, os);
  solve->add_option("--p", os.p, "subcritical exponent");
  solve->add_option("--p-frac", os.p_frac, "exponent as a fraction of n/(n-2)");
  CLI::App* cont = app.add_subcommand("continue", "continuation toward the critical exponent");
  add_common(cont, oc);
  cont->add_option("--p-schedule", oc.p_schedule, "increasing exponent schedule")
      ->expected(-1);
  cont->add_option("--p-frac-schedule", oc.p_frac_schedule,
                   "schedule as fractions of n/(n-2)")
      ->expected(-1);
  CLI::App* kwc = app.add_subcommand("kwcheck", "sign condition and flatness report");
  add_common(kwc, ok);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(ov);
    if (solve->parsed()) return run_solve(os);
    if (cont->parsed()) return run_continue(oc);
    if (kwc->parsed()) return run_kwcheck(ok);
  } catch (const pmc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
