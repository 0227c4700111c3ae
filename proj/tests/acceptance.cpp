// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// hard failure. Covers the closed-form identities, the asymptotic laws and
// the end-to-end variational runs at their stated tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pmc/util.hpp"
#include "pmc/verify.hpp"

using namespace pmc;

namespace {

int g_fails = 0;
int g_warns = 0;

void report(int idx, const std::string& name, bool pass, double measured,
            double threshold, const std::string& detail, bool warn_only = false) {
  const char* state = pass ? "PASS" : (warn_only ? "WARN" : "FAIL");
  if (!pass && !warn_only) ++g_fails;
  if (!pass && warn_only) ++g_warns;
  std::printf("[%2d] %-4s %-38s measured=%-11.4g tol=%-10.4g %s\n", idx, state,
              name.c_str(), measured, threshold, detail.c_str());
  std::fflush(stdout);
}

void from_check(int idx, const checks::CheckResult& r) {
  report(idx, r.name, r.pass, r.measured, r.threshold, r.detail, r.warn_only);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Criterion 9: two_bump(alpha=1.5, a=0.5, n=4), p = 0.95 tau. Converges at
// desk scale, rescaled residual < 1e-6, maximin value below the peak levels
// by a positive margin.
MountainPassResult criterion_mountain_pass() {
  const int n = 4, m = 256;
  RadialGrid g = make_grid(n, m);
  ZonalBasis b = make_basis(g, m - 1);
  CurvatureProfile prof = builtin_profile("two_bump", {{"alpha", 1.5}, {"a", 0.5}});
  const double p = 0.95 * critical_exponent(n);

  auto t0 = std::chrono::steady_clock::now();
  SolverConfig cfg;
  Endpoints ep = make_endpoints(prof, p, g, b, cfg);
  MountainPassResult res = mountain_pass(prof, p, ep.psi1, ep.psi2, g, b, cfg);
  double elapsed = seconds_since(t0);

  GridFn h(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) h[j] = prof.h(g.r[j]);
  double resc_max = 0;
  if (res.mu > 0) {
    GridFn w = rescale_to_solution(res.u_star, res.mu, p);
    resc_max = max_abs(residual(w, h, p, 1.0, g, b));
  }
  double peak = std::min(prof.h(0), prof.h(M_PI)) * g.s_nm1;
  double margin = peak - res.cp;
  bool pass = res.converged && elapsed < 60.0 && resc_max < 1e-6 && margin > 0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "c_p=%.6g margin=%.4g mu=%.4g %.1fs %s", res.cp, margin,
                res.mu, elapsed, res.regime.c_str());
  report(9, "mountain-pass-end-to-end", pass, resc_max, 1e-6, detail);
  return res;
}

// Criterion 10: bounded sup-norms for the admissible profile over the stated
// schedule with no flag; the flag fires for the monotone control (reported,
// warns when it does not).
void criterion_continuation() {
  const int n = 4;
  const double tau = critical_exponent(n);
  {
    const int m = 256;
    RadialGrid g = make_grid(n, m);
    ZonalBasis b = make_basis(g, m - 1);
    CurvatureProfile prof = builtin_profile("two_bump");
    std::vector<double> sched;
    for (double f : {0.90, 0.925, 0.95, 0.975, 0.999}) sched.push_back(f * tau);
    SolverConfig cfg;
    ContinuationReport rep = continuation(prof, sched, g, b, cfg);
    double smin = 1e300, smax = 0;
    bool all = true;
    for (const auto& s : rep.steps) {
      all = all && s.converged;
      smin = std::min(smin, s.sup_norm);
      smax = std::max(smax, s.sup_norm);
    }
    double ratio = smin > 0 ? smax / smin : 1e300;
    bool pass = all && ratio < 2.0 && !rep.concentration_flag;
    char detail[160];
    std::snprintf(detail, sizeof detail, "sup range [%.4g, %.4g]%s", smin,
                  smax, rep.concentration_flag ? " FLAGGED" : "");
    report(10, "continuation-boundedness", pass, ratio, 2.0, detail);
  }
  {
    // negative control: decreasing profile, sharper schedule and a finer
    // grid so the concentrating branch stays resolvable
    const int m = 512;
    RadialGrid g = make_grid(n, m);
    ZonalBasis b = make_basis(g, m - 1);
    CurvatureProfile prof = builtin_profile("monotone", {{"a", 0.4}});
    std::vector<double> sched;
    for (double f : {0.90, 0.98, 0.997, 0.9995}) sched.push_back(f * tau);
    SolverConfig cfg;
    ContinuationReport rep = continuation(prof, sched, g, b, cfg);
    std::string sups = "sup:";
    for (const auto& s : rep.steps) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.3g", s.sup_norm);
      sups += buf;
    }
    report(10, "continuation-negative-control", rep.concentration_flag,
           rep.concentration_flag ? 1.0 : 0.0, 1.0, sups,
           /*warn_only=*/true);
  }
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  auto t0 = std::chrono::steady_clock::now();

  from_check(1, checks::check_bubble_normalization(256));
  from_check(2, checks::check_volume_identity());
  from_check(3, checks::check_family_residual(256));
  from_check(4, checks::check_steklov_diagonal(3, 256, 128));
  from_check(5, checks::check_curvature_limit(256));
  from_check(6, checks::check_mass_center_law(256));
  from_check(7, checks::check_decomposition_orthogonality(256));
  from_check(8, checks::check_gradient_fd(192));
  criterion_mountain_pass();
  criterion_continuation();
  from_check(11, checks::check_sigma_barrier(256, 200, 0.99));

  std::printf("total %.1f s, %d failed, %d warned\n", seconds_since(t0),
              g_fails, g_warns);
  return g_fails;
}
