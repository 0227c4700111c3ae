#pragma once

#include <cstddef>
#include <vector>

namespace pmc {

std::vector<double> linspace(double a, double b, int n);
// Geometric spacing from a to b (both > 0).
std::vector<double> logspace(double a, double b, int n);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double slope_sigma = 0;  // standard error of the slope
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double max_abs(const std::vector<double>& v);

}  // namespace pmc
