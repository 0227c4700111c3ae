#include "pmc/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "pmc/util.hpp"

namespace pmc {

namespace {

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// Natural cubic spline with analytic derivative.
struct CubicSpline {
  std::vector<double> x, y, m;  // nodes, values, second derivatives

  CubicSpline(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)) {
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("spline needs at least 3 samples");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x[i] > x[i - 1]))
        throw std::invalid_argument("spline abscissae must increase");
    m.assign(n, 0.0);
    std::vector<double> a(n, 0), b(n, 0), c(n, 0), d(n, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      a[i] = h0;
      b[i] = 2.0 * (h0 + h1);
      c[i] = h1;
      d[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    // Thomas algorithm on the interior rows (natural ends m = 0).
    for (std::size_t i = 2; i + 1 < n; ++i) {
      double f = a[i] / b[i - 1];
      b[i] -= f * c[i - 1];
      d[i] -= f * d[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m[i] = (d[i] - c[i] * (i + 2 < n ? m[i + 1] : 0.0)) / b[i];
      if (i == 1) break;
    }
  }

  std::size_t segment(double t) const {
    if (t <= x.front()) return 0;
    if (t >= x.back()) return x.size() - 2;
    auto it = std::upper_bound(x.begin(), x.end(), t);
    return static_cast<std::size_t>(it - x.begin()) - 1;
  }

  double operator()(double t) const {
    std::size_t i = segment(t);
    double h = x[i + 1] - x[i], u = t - x[i], v = x[i + 1] - t;
    return (m[i] * v * v * v + m[i + 1] * u * u * u) / (6.0 * h) +
           (y[i] / h - m[i] * h / 6.0) * v + (y[i + 1] / h - m[i + 1] * h / 6.0) * u;
  }

  double deriv(double t) const {
    std::size_t i = segment(t);
    double h = x[i + 1] - x[i], u = t - x[i], v = x[i + 1] - t;
    return (-m[i] * v * v + m[i + 1] * u * u) / (2.0 * h) -
           (y[i] / h - m[i] * h / 6.0) + (y[i + 1] / h - m[i + 1] * h / 6.0);
  }
};

}  // namespace

KWReport kazdan_warner_check(const CurvatureProfile& p, int samples) {
  KWReport rep;
  double best_up = 0, best_down = 0;
  double prev_r = -1, prev_d = 0;
  bool prev_pos = false;
  const double tol = 1e-12;
  for (int i = 1; i < samples; ++i) {
    double r = M_PI * i / samples;
    double h = p.h(r);
    if (h > 0) {
      double d = p.dh(r);
      if (d > tol && d > best_up) {
        best_up = d;
        rep.witness_up = r;
      }
      if (d < -tol && -d > best_down) {
        best_down = -d;
        rep.witness_down = r;
      }
      if (prev_pos && prev_d * d < 0) {
        // refine the derivative sign change by bisection
        double lo = prev_r, hi = r;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          if (p.dh(mid) * prev_d > 0)
            lo = mid;
          else
            hi = mid;
        }
        rep.crossing = 0.5 * (lo + hi);
      }
      prev_pos = true;
      prev_r = r;
      prev_d = d;
    } else {
      prev_pos = false;
    }
  }
  rep.holds = rep.witness_up >= 0 && rep.witness_down >= 0;
  return rep;
}

FlatnessFit flatness_fit(const CurvatureProfile& p, double r0, int n,
                         FlatnessWindow win) {
  const bool interior = r0 > 1e-9 && r0 < M_PI - 1e-9;
  if (interior) {
    double scale = std::max(1.0, std::abs(p.h(r0)));
    if (std::abs(p.dh(r0)) > 1e-6 * scale)
      throw std::invalid_argument("flatness fit requires a critical point");
  }

  FlatnessFit fit;
  const double h0 = p.h(r0);
  std::vector<double> lx, ly;
  double sign_hint = 0;
  auto ss = logspace(win.s_min, win.s_max, win.samples);
  for (double s : ss) {
    for (double side : {+1.0, -1.0}) {
      double r = r0 + side * s;
      if (r <= 0 || r >= M_PI) continue;
      double d = p.h(r) - h0;
      if (std::abs(d) < 1e-14 * std::max(1.0, std::abs(h0))) continue;
      if (sign_hint == 0) sign_hint = d > 0 ? 1.0 : -1.0;
      lx.push_back(std::log(s));
      ly.push_back(std::log(std::abs(d)));
    }
  }
  if (lx.size() < 8) {
    fit.degenerate = true;
    return fit;
  }
  LineFit lf = fit_line(lx, ly);
  fit.alpha_hat = lf.slope;
  fit.a_hat = sign_hint * std::exp(lf.intercept);
  fit.sigma = lf.slope_sigma;
  const double lower = n - 3.0, upper = n - 1.0;
  const double margin = std::max(2.0 * fit.sigma, 1e-9);
  fit.admissible =
      fit.alpha_hat > lower + margin && fit.alpha_hat < upper - margin;
  return fit;
}

std::vector<double> detect_critical_points(const CurvatureProfile& p,
                                           int samples) {
  std::vector<double> out = {0.0};
  double prev_r = M_PI / samples, prev_d = p.dh(prev_r);
  for (int i = 2; i < samples; ++i) {
    double r = M_PI * i / samples;
    double d = p.dh(r);
    if (prev_d * d < 0) {
      double lo = prev_r, hi = r, dl = prev_d;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (p.dh(mid) * dl > 0)
          lo = mid;
        else
          hi = mid;
      }
      double r0 = 0.5 * (lo + hi);
      if (std::abs(p.dh(r0)) < 1e-8 * std::max(1.0, std::abs(p.h(r0))))
        out.push_back(r0);
    }
    prev_r = r;
    prev_d = d;
  }
  out.push_back(M_PI);
  return out;
}

CurvatureProfile builtin_profile(const std::string& name,
                                 const std::map<std::string, double>& params) {
  CurvatureProfile prof;
  prof.name = name;
  if (name == "constant") {
    double c = get_param(params, "c", 1.0);
    prof.params = {{"c", c}};
    prof.h = [c](double) { return c; };
    prof.dh = [](double) { return 0.0; };
    return prof;
  }
  if (name == "two_bump") {
    double alpha = get_param(params, "alpha", 1.5);
    double a = get_param(params, "a", 0.5);
    if (!(alpha > 0)) throw std::invalid_argument("two_bump requires alpha > 0");
    prof.params = {{"alpha", alpha}, {"a", a}};
    prof.h = [a, alpha](double r) { return 1.0 - a * std::pow(std::sin(r), alpha); };
    prof.dh = [a, alpha](double r) {
      double s = std::sin(r);
      if (s <= 0) return 0.0;
      return -a * alpha * std::pow(s, alpha - 1.0) * std::cos(r);
    };
    prof.critical_points = {
        {0.0, -a, alpha, true},
        {0.5 * M_PI, 0.5 * a * alpha, 2.0, false},
        {M_PI, -a, alpha, true},
    };
    return prof;
  }
  if (name == "monotone") {
    double a = get_param(params, "a", 0.4);
    prof.params = {{"a", a}};
    prof.h = [a](double r) { return 1.0 - a * (1.0 - std::cos(r)); };
    prof.dh = [a](double r) { return -a * std::sin(r); };
    prof.critical_points = {
        {0.0, -0.5 * a, 2.0, true},
        {M_PI, 0.5 * a, 2.0, false},
    };
    return prof;
  }
  throw std::invalid_argument("unknown profile: " + name);
}

CurvatureProfile profile_from_table(std::vector<double> r,
                                    std::vector<double> h) {
  if (r.size() != h.size())
    throw std::invalid_argument("table columns must have equal length");
  auto spline = std::make_shared<CubicSpline>(std::move(r), std::move(h));
  CurvatureProfile prof;
  prof.name = "table";
  prof.h = [spline](double t) { return (*spline)(t); };
  prof.dh = [spline](double t) { return spline->deriv(t); };
  return prof;
}

}  // namespace pmc
