#include "pmc/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pmc {

using nlohmann::json;

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig s;
  if (j.contains("path_nodes")) s.path_nodes = j["path_nodes"].get<int>();
  if (j.contains("tol_mp")) s.tol_mp = j["tol_mp"].get<double>();
  if (j.contains("newton_tol")) s.newton_tol = j["newton_tol"].get<double>();
  if (j.contains("climb_enter")) s.climb_enter = j["climb_enter"].get<double>();
  if (j.contains("max_ascent")) s.max_ascent = j["max_ascent"].get<int>();
  if (j.contains("max_climb")) s.max_climb = j["max_climb"].get<int>();
  if (j.contains("max_newton")) s.max_newton = j["max_newton"].get<int>();
  if (j.contains("step0")) s.step0 = j["step0"].get<double>();
  if (j.contains("lambda0")) s.lambda0 = j["lambda0"].get<double>();
  if (j.contains("rho0")) s.rho0 = j["rho0"].get<double>();
  if (j.contains("blowup_ratio")) s.blowup_ratio = j["blowup_ratio"].get<double>();
  if (j.contains("verbose")) s.verbose = j["verbose"].get<bool>();
  return s;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig c;
  if (j.contains("n")) c.n = j["n"].get<int>();
  if (j.contains("grid_m")) c.grid_m = j["grid_m"].get<int>();
  if (j.contains("kmax")) c.kmax = j["kmax"].get<int>();
  if (j.contains("rho0")) c.rho0 = j["rho0"].get<double>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (j.contains("p")) c.p = j["p"].get<double>();
  if (j.contains("p_frac")) c.p_frac = j["p_frac"].get<double>();
  if (j.contains("p_schedule"))
    c.p_schedule = j["p_schedule"].get<std::vector<double>>();
  if (j.contains("p_frac_schedule"))
    c.p_frac_schedule = j["p_frac_schedule"].get<std::vector<double>>();
  if (j.contains("solver")) c.solver = solver_from_json(j["solver"]);
  if (j.contains("profile")) {
    const json& pj = j["profile"];
    if (pj.contains("name")) c.profile.name = pj["name"].get<std::string>();
    if (pj.contains("params"))
      for (auto it = pj["params"].begin(); it != pj["params"].end(); ++it)
        c.profile.params[it.key()] = it.value().get<double>();
    if (pj.contains("r")) c.profile.table_r = pj["r"].get<std::vector<double>>();
    if (pj.contains("h")) c.profile.table_h = pj["h"].get<std::vector<double>>();
  }
  return c;
}

void validate_config(const RunConfig& c) {
  if (c.n < 3)
    throw ConfigError("dimension must be >= 3 (the boundary operator degenerates below)");
  if (c.grid_m < 8) throw ConfigError("grid_m must be >= 8");
  if (c.kmax < 0 || c.kmax > c.grid_m - 1)
    throw ConfigError("kmax must lie in [0, grid_m-1]");
  const double tau = critical_exponent(c.n);
  auto check_p = [&](double p) {
    if (!(p > 1.0) || !(p < tau))
      throw ConfigError("exponent values must lie in (1, n/(n-2))");
  };
  if (c.p) check_p(*c.p);
  if (c.p_frac) check_p(*c.p_frac * tau);
  for (double p : c.p_schedule) check_p(p);
  for (double f : c.p_frac_schedule) check_p(f * tau);
  if (c.rho0 < 0) throw ConfigError("rho0 must be nonnegative");
  if (c.solver.tol_mp <= 0 || c.solver.newton_tol <= 0)
    throw ConfigError("tolerances must be positive");
  if (c.solver.path_nodes < 5) throw ConfigError("path_nodes must be >= 5");
}

CurvatureProfile make_profile(const ProfileSpec& spec) {
  if (spec.name == "table") {
    if (spec.table_r.empty())
      throw ConfigError("table profile needs r and h sample arrays");
    return profile_from_table(spec.table_r, spec.table_h);
  }
  try {
    return builtin_profile(spec.name, spec.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

double resolve_p(const RunConfig& c) {
  const double tau = critical_exponent(c.n);
  if (c.p && c.p_frac) throw ConfigError("give either p or p_frac, not both");
  if (c.p) return *c.p;
  if (c.p_frac) return *c.p_frac * tau;
  throw ConfigError("solve needs p or p_frac");
}

std::vector<double> resolve_schedule(const RunConfig& c) {
  const double tau = critical_exponent(c.n);
  if (!c.p_schedule.empty() && !c.p_frac_schedule.empty())
    throw ConfigError("give either p_schedule or p_frac_schedule, not both");
  if (!c.p_schedule.empty()) return c.p_schedule;
  if (!c.p_frac_schedule.empty()) {
    std::vector<double> out;
    for (double f : c.p_frac_schedule) out.push_back(f * tau);
    return out;
  }
  throw ConfigError("continue needs p_schedule or p_frac_schedule");
}

void write_solution_csv(const std::string& path, const RadialGrid& g,
                        const GridFn& u, const GridFn& w,
                        const GridFn& residual) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "r,u,w,residual\n";
  for (std::size_t j = 0; j < g.size(); ++j)
    out << num17(g.r[j]) << ',' << num17(u[j]) << ',' << num17(w[j]) << ','
        << num17(residual[j]) << '\n';
}

void write_continuation_csv(const std::string& path,
                            const ContinuationReport& rep) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "p,c_p,mu,sup_norm,lambda_conc,lambda_star,q_n,residual_max,converged\n";
  for (const auto& s : rep.steps)
    out << num17(s.p) << ',' << num17(s.cp) << ',' << num17(s.mu) << ','
        << num17(s.sup_norm) << ',' << num17(s.lambda_conc) << ','
        << num17(s.lambda_star) << ',' << num17(s.q_axial) << ','
        << num17(s.residual_max) << ',' << (s.converged ? 1 : 0) << '\n';
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

json profile_json(const RunConfig& c) {
  json p;
  p["name"] = c.profile.name;
  p["params"] = c.profile.params;
  return p;
}

json sigma_json(const SigmaReport& s) {
  json j;
  j["t0"] = s.t0;
  j["lambda_star"] = s.lambda_star;
  j["rho_v"] = s.rho_v;
  j["q_n"] = s.q_axial;
  j["pole"] = s.pole == Pole::South ? "south" : "north";
  j["inside_sigma"] = s.inside_sigma;
  return j;
}

}  // namespace

std::string solve_summary_json(const RunConfig& c, double p,
                               const MountainPassResult& res,
                               double rescaled_residual_max, double sup) {
  json j;
  j["schema"] = 1;
  j["command"] = "solve";
  j["n"] = c.n;
  j["grid_m"] = c.grid_m;
  j["p"] = p;
  j["profile"] = profile_json(c);
  j["c_p"] = res.cp;
  j["mu"] = res.mu;
  j["residual_max"] = res.residual_max;
  j["rescaled_residual_max"] = rescaled_residual_max;
  j["sup_norm"] = sup;
  j["j_psi"] = {res.j_psi1, res.j_psi2};
  j["sigma"] = sigma_json(res.sigma);
  j["iterations"] = {{"ascent", res.ascent_iters},
                     {"climb", res.climb_iters},
                     {"newton", res.newton_iters}};
  j["grad_norm_final"] = res.grad_norm_final;
  j["regime"] = res.regime;
  j["converged"] = res.converged;
  if (!res.message.empty()) j["message"] = res.message;
  return j.dump(2);
}

std::string continuation_summary_json(const RunConfig& c,
                                      const ContinuationReport& rep) {
  json j;
  j["schema"] = 1;
  j["command"] = "continue";
  j["n"] = c.n;
  j["grid_m"] = c.grid_m;
  j["profile"] = profile_json(c);
  j["concentration_flag"] = rep.concentration_flag;
  j["flag_index"] = rep.flag_index;
  json steps = json::array();
  for (const auto& s : rep.steps) {
    json e;
    e["p"] = s.p;
    e["c_p"] = s.cp;
    e["mu"] = s.mu;
    e["sup_norm"] = s.sup_norm;
    e["lambda_conc"] = s.lambda_conc;
    e["lambda_star"] = s.lambda_star;
    e["q_n"] = s.q_axial;
    e["residual_max"] = s.residual_max;
    e["converged"] = s.converged;
    e["warm_start"] = s.warm_start;
    steps.push_back(e);
  }
  j["steps"] = steps;
  if (!rep.message.empty()) j["message"] = rep.message;
  return j.dump(2);
}

std::string kwcheck_json(const RunConfig& c, const CurvatureProfile& prof,
                         const KWReport& kw,
                         const std::vector<FlatnessFit>& fits,
                         const std::vector<double>& fit_r0) {
  json j;
  j["schema"] = 1;
  j["command"] = "kwcheck";
  j["n"] = c.n;
  j["profile"] = profile_json(c);
  j["kazdan_warner"] = kw.holds;
  json w;
  w["increasing_r"] = kw.witness_up;
  w["decreasing_r"] = kw.witness_down;
  w["crossing"] = kw.crossing;
  j["witnesses"] = w;
  json table = json::array();
  for (std::size_t i = 0; i < fits.size(); ++i) {
    json e;
    e["r0"] = fit_r0[i];
    e["h_r0"] = prof.h(fit_r0[i]);
    e["alpha_hat"] = fits[i].alpha_hat;
    e["a_hat"] = fits[i].a_hat;
    e["fit_sigma"] = fits[i].sigma;
    e["admissible"] = fits[i].admissible;
    e["degenerate"] = fits[i].degenerate;
    table.push_back(e);
  }
  j["critical_points"] = table;
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace pmc
