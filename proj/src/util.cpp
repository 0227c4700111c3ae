#include "pmc/util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmc {

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace needs n >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("logspace needs positive bounds");
  auto t = linspace(std::log(a), std::log(b), n);
  for (double& v : t) v = std::exp(v);
  return t;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line needs matching samples, n >= 2");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx < 1e-300) throw std::invalid_argument("degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - (f.intercept + f.slope * x[i]);
      ss += r * r;
    }
    f.slope_sigma = std::sqrt(ss / (n - 2) / sxx);
  }
  return f;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace pmc
