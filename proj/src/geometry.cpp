#include "pmc/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace pmc {

namespace {

double norm2(const std::vector<double>& v) {
  double acc = 0;
  for (double c : v) acc += c * c;
  return acc;
}

// Shared inversion formula: (a, b) -> (4a/D, (|a|^2 + (b+1)^2 - 4)/D) with
// D = |a|^2 + (b-1)^2. Involutive, singular where D = 0.
std::pair<std::vector<double>, double> invert(const std::vector<double>& a,
                                              double b) {
  double d = norm2(a) + (b - 1.0) * (b - 1.0);
  if (d < 1e-300)
    throw std::domain_error("stereographic extension is singular at the north pole");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = 4.0 * a[i] / d;
  double last = (norm2(a) + (b + 1.0) * (b + 1.0) - 4.0) / d;
  return {std::move(out), last};
}

}  // namespace

HalfSpacePoint stereo_to_halfspace(const BallPoint& z) {
  auto [x, t] = invert(z.y, z.s);
  return {std::move(x), t};
}

BallPoint stereo_to_ball(const HalfSpacePoint& zp) {
  if (zp.t > -1.0 + 1e-12)
    throw std::domain_error("half-space point must satisfy t <= -1");
  auto [y, s] = invert(zp.x, zp.t);
  return {std::move(y), s};
}

double conformal_factor(const HalfSpacePoint& zp) {
  double d = norm2(zp.x) + (zp.t - 1.0) * (zp.t - 1.0);
  return 16.0 / (d * d);
}

HalfSpacePoint dilation(const HalfSpacePoint& zp, double beta) {
  if (!(beta > 0)) throw std::invalid_argument("dilation requires beta > 0");
  HalfSpacePoint out;
  out.x.resize(zp.x.size());
  for (std::size_t i = 0; i < zp.x.size(); ++i) out.x[i] = beta * zp.x[i];
  out.t = beta * (zp.t + 1.0) - 1.0;
  return out;
}

double chordal_to_geodesic(double chordal) {
  if (chordal < -1e-12 || chordal > 2.0 + 1e-12)
    throw std::domain_error("chordal distance must lie in [0, 2]");
  double h = std::clamp(0.5 * chordal, 0.0, 1.0);
  return 2.0 * std::asin(h);
}

std::pair<std::vector<double>, double> kelvin_point(
    const std::vector<double>& x, int n) {
  double r2 = norm2(x);
  if (r2 < 1e-300) throw std::domain_error("inversion is singular at the origin");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / r2;
  double factor = std::pow(std::sqrt(r2), 2.0 - n);
  return {std::move(out), factor};
}

double south_norm2(const BallPoint& z) {
  return norm2(z.y) + (z.s + 1.0) * (z.s + 1.0);
}

double image_norm2(const HalfSpacePoint& zp) {
  return norm2(zp.x) + (zp.t + 1.0) * (zp.t + 1.0);
}

BallPoint boundary_point(double r, int n) {
  BallPoint z;
  z.y.assign(n - 1, 0.0);
  z.y[0] = std::sin(r);
  z.s = -std::cos(r);
  return z;
}

}  // namespace pmc
