#pragma once

#include <cstddef>
#include <vector>

namespace pmc {

// Volume of the unit m-sphere, |S^m| = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(int m);

// Integral of sin^m over (0, pi).
double sin_power_integral(int m);

// Sobolev-trace critical exponent n/(n-2).
double critical_exponent(int n);

// Robin coefficient (n-2)/2.
double gamma_n(int n);

// Quadrature grid on the colatitude interval (0, pi) for the measure
// sin^{n-2}(r) dr. Nodes are Gauss points for the weight
// (1-x^2)^{(n-3)/2} in x = cos r, so polynomials in cos r of degree
// <= 2m-1 integrate exactly.
struct RadialGrid {
  int n = 0;
  std::vector<double> r;  // colatitude from the south pole, increasing
  std::vector<double> x;  // cos(r)
  std::vector<double> w;  // weights for sin^{n-2}(r) dr
  double s_nm2 = 0;       // |S^{n-2}|
  double s_nm1 = 0;       // |S^{n-1}|
  std::size_t size() const { return r.size(); }
};

RadialGrid make_grid(int n, int m);

}  // namespace pmc
