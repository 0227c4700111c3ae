#pragma once

#include <functional>
#include <utility>

#include "pmc/spectral.hpp"

namespace pmc {

enum class Pole { South, North };

// Member of the explicit solution family of the homogeneous problem
// (h identically 1 at the critical exponent), concentrating at the pole as
// lambda -> 0. lambda = 1 is the constant function 1.
struct Bubble {
  double lambda = 1.0;
  Pole pole = Pole::South;
  int n = 3;
};

// Boundary trace (lambda / (lambda^2 cos^2(r/2) + sin^2(r/2)))^{(n-2)/2},
// with r the colatitude from the concentration pole.
double bubble_boundary(const Bubble& b, double r);
GridFn bubble_values(const Bubble& b, const RadialGrid& g);

// Harmonic interior extension evaluated at a centered-chart point.
double bubble_interior(const Bubble& b, const std::vector<double>& y,
                       double s);

// Outward normal derivative of the harmonic extension on the boundary,
// in closed form (a Newtonian kernel with pole outside the ball).
double bubble_normal_derivative(const Bubble& b, double r);

// Exact pointwise residual of the boundary condition,
// dn u + gamma u - mu gamma h u^p, using the closed-form normal derivative.
// Valid at any lambda, unlike the truncated spectral route.
GridFn bubble_residual(const Bubble& b, const GridFn& h, double p, double mu,
                       const RadialGrid& g);

// Quadrature grid transported by the change of variables
// r = 2 atan(lambda tan(v/2)) that flattens the bubble density: nodes
// concentrate where the bubble does and sum w~_j u^{tau+1}(r~_j) stays exact
// for every lambda.
RadialGrid substituted_grid(const Bubble& b, const RadialGrid& g);

// int h u^{p+1} dsigma for a bubble, on the substituted grid.
double bubble_j_functional(const Bubble& b,
                           const std::function<double(double)>& h, double p,
                           const RadialGrid& g);

// E(u) through the boundary identity E = gamma int u^{tau+1} dsigma that
// holds for the family (Green identity plus the boundary equation).
double bubble_energy(const Bubble& b, const RadialGrid& g);

// Axial mass center of the bubble, on the substituted grid.
double bubble_mass_center(const Bubble& b, const RadialGrid& g);

// Conformal reparametrization u(psi_beta(r)) jac^{(n-2)/2}, with
// psi_beta(r) = 2 atan(beta tan(r/2)). Leaves E and int u^{tau+1} invariant.
// t_phi(1, beta) is the north bubble with lambda = beta for beta < 1 and the
// south bubble with lambda = 1/beta for beta > 1.
GridFn t_phi(const GridFn& u, double beta, const RadialGrid& g,
             const ZonalBasis& basis);

double default_rho0(int n);

struct SigmaOptions {
  double rho0 = 0;           // 0 -> default_rho0(n)
  double lambda_lo = 1e-4;
  bool require_t_near_one = false;  // optional extra membership constraint
  double t_window = 0.5;
  int scan_points = 48;
  int golden_iters = 90;
};

// Distance-to-family decomposition u = t0 u_{lambda*} + v, minimizing the
// E-norm of v over t and lambda. v is E-orthogonal to the fitted bubble by
// the optimality of t0.
struct SigmaReport {
  double t0 = 0;
  double lambda_star = 0;
  double rho_v = 0;       // E-norm of the residual v
  double q_axial = 0;     // mass center of u, south-pole coordinate in [0,2]
  double q_dist = 0;      // distance of the mass center from the fit pole
  Pole pole = Pole::South;
  bool inside_sigma = false;
  bool converged = false;
  double beta_fit = 0;    // dilation carrying the fitted bubble to 1
  GridFn v;
};

SigmaReport sigma_decompose(const GridFn& u, Pole pole, const RadialGrid& g,
                            const ZonalBasis& basis, SigmaOptions opt = {});

// E-pairings of the reparametrized residual with the constant and with the
// axial coordinate function; both vanish at an interior optimum of the fit.
std::pair<double, double> orthogonality_check(const GridFn& v,
                                              double lambda_star, Pole pole,
                                              const RadialGrid& g,
                                              const ZonalBasis& basis);

// int u_{lambda*}^tau v dsigma on the plain grid; vanishes at the optimum
// because the fitted bubble solves the homogeneous boundary equation.
double critical_secondary_check(const GridFn& v, double lambda_star, Pole pole,
                                const RadialGrid& g);

}  // namespace pmc
