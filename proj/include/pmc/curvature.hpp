#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pmc {

struct CriticalPointInfo {
  double r0 = 0;
  double a = 0;      // leading local coefficient of h(r) - h(r0)
  double alpha = 0;  // local exponent |r - r0|^alpha
  bool is_max = false;
};

// Rotationally symmetric boundary curvature h(r), r in [0, pi], with its
// derivative and declared critical-point metadata.
struct CurvatureProfile {
  std::string name = "custom";
  std::map<std::string, double> params;
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::vector<CriticalPointInfo> critical_points;

  double operator()(double r) const { return h(r); }
  double deriv(double r) const { return dh(r); }
};

struct KWReport {
  bool holds = false;
  double witness_up = -1;    // h > 0 and h' > 0
  double witness_down = -1;  // h > 0 and h' < 0
  double crossing = -1;      // refined sign change of h' inside {h > 0}
};

// Sign condition: h' changes sign where h > 0. Dense sampling with
// bisection refinement of the derivative sign change.
KWReport kazdan_warner_check(const CurvatureProfile& p, int samples = 4096);

struct FlatnessWindow {
  double s_min = 1e-4;
  double s_max = 1e-1;
  int samples = 32;
};

struct FlatnessFit {
  double alpha_hat = 0;
  double a_hat = 0;
  double sigma = 0;  // slope standard error
  bool admissible = false;
  bool degenerate = false;
};

// Least-squares slope of log|h - h(r0)| against log|r - r0| over a dyadic
// window around a critical point; admissible iff n-3 < alpha < n-1 strictly,
// with margin exceeding the fit uncertainty.
FlatnessFit flatness_fit(const CurvatureProfile& p, double r0, int n,
                         FlatnessWindow win = {});

// Numerically detected critical points (derivative sign changes refined by
// bisection to |h'| < 1e-8, plus the two poles).
std::vector<double> detect_critical_points(const CurvatureProfile& p,
                                           int samples = 4096);

// Named profiles:
//   two_bump(alpha, a):  h = 1 - a sin^alpha(r), maxima at both poles,
//                        positive dip at the equator
//   monotone(a):         h = 1 - a (1 - cos r), decreasing where positive
//   constant(c):         h = c
CurvatureProfile builtin_profile(const std::string& name,
                                 const std::map<std::string, double>& params = {});

// Tabulated samples with natural cubic spline interpolation.
CurvatureProfile profile_from_table(std::vector<double> r,
                                    std::vector<double> h);

}  // namespace pmc
