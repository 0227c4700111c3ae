#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmc/curvature.hpp"
#include "pmc/solver.hpp"

namespace pmc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProfileSpec {
  std::string name = "two_bump";
  std::map<std::string, double> params;
  std::vector<double> table_r, table_h;  // for name == "table"
};

struct RunConfig {
  int n = 4;
  int grid_m = 256;
  int kmax = 0;  // 0 -> grid_m / 2 for the verification basis
  ProfileSpec profile;
  std::optional<double> p;       // absolute exponent
  std::optional<double> p_frac;  // fraction of the critical exponent
  std::vector<double> p_schedule;
  std::vector<double> p_frac_schedule;
  double rho0 = 0;
  SolverConfig solver;
  std::string out_dir = "out";
  int threads = 0;  // 0 = library default backend
};

RunConfig load_config(const std::string& path);
void validate_config(const RunConfig& c);

CurvatureProfile make_profile(const ProfileSpec& spec);

// Resolved absolute exponent for a solve run.
double resolve_p(const RunConfig& c);
std::vector<double> resolve_schedule(const RunConfig& c);

// CSV emission, 17 significant digits so files round-trip bit-exactly.
void write_solution_csv(const std::string& path, const RadialGrid& g,
                        const GridFn& u, const GridFn& w,
                        const GridFn& residual);
void write_continuation_csv(const std::string& path,
                            const ContinuationReport& rep);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

std::string solve_summary_json(const RunConfig& c, double p,
                               const MountainPassResult& res,
                               double rescaled_residual_max, double sup);
std::string continuation_summary_json(const RunConfig& c,
                                      const ContinuationReport& rep);
std::string kwcheck_json(const RunConfig& c, const CurvatureProfile& prof,
                         const KWReport& kw,
                         const std::vector<FlatnessFit>& fits,
                         const std::vector<double>& fit_r0);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pmc
