#pragma once

#include <utility>
#include <vector>

// Chart conventions used throughout:
//   * The ball B^n is the unit ball centered at the origin; a point is
//     (y, s) with y the n-1 tangential coordinates and s the axial one.
//     The south pole is (0, -1), the north pole (0, +1).
//   * Colatitude r on the boundary sphere is measured from the south pole,
//     so a boundary point is (sin(r) w, -cos(r)) and its distance from the
//     south pole is 2 sin(r/2).
//   * The stereographic extension maps the ball onto the half space
//     {t <= -1}. It is the inversion of radius 2 centered at the north
//     pole, hence an involution: the same formula realizes both directions.
//   * Radial norms in the half-space identities are distances from the
//     south pole and from its image (0, -1) on the plane t = -1, while the
//     axial coordinate s stays centered. With those conventions,
//     |z'|^2 = 4 |z|^2 / (|z|^2 - 4 s) holds exactly.

namespace pmc {

struct BallPoint {
  std::vector<double> y;
  double s = 0;
};

struct HalfSpacePoint {
  std::vector<double> x;
  double t = -1;
};

HalfSpacePoint stereo_to_halfspace(const BallPoint& z);
BallPoint stereo_to_ball(const HalfSpacePoint& zp);

// Scalar of the pullback of the flat metric under the extension,
// 16 / (|x|^2 + (t-1)^2)^2.
double conformal_factor(const HalfSpacePoint& zp);

// Axis dilation of the half space fixing (0, -1): (x, t) -> (bx, b(t+1)-1).
HalfSpacePoint dilation(const HalfSpacePoint& zp, double beta);

// Chordal distance from the south pole to colatitude: r = 2 asin(c/2).
double chordal_to_geodesic(double chordal);

// Inversion point x/|x|^2 together with the Kelvin factor |x|^{2-n}.
std::pair<std::vector<double>, double> kelvin_point(
    const std::vector<double>& x, int n);

// Squared distance from the south pole (0, -1).
double south_norm2(const BallPoint& z);
// Squared distance from the image of the south pole on the plane t = -1.
double image_norm2(const HalfSpacePoint& zp);

// Axisymmetric boundary point at colatitude r (first tangential coordinate
// carries sin r).
BallPoint boundary_point(double r, int n);

}  // namespace pmc
