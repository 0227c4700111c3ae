#pragma once

#include <string>
#include <vector>

#include "pmc/bubbles.hpp"
#include "pmc/curvature.hpp"
#include "pmc/spectral.hpp"

// Variational scheme on the energy sphere
// S = { u : E(u) = gamma |S^{n-1}|, u >= 0 }:
// maximin over paths joining two bubble neighborhoods (the path minimum is
// pushed up, opposite orientation to the classical mountain pass because the
// functional is maximized at the concentration limits), then Newton
// refinement of the Euler-Lagrange system and rescaling to a solution of the
// boundary equation with multiplier 1.

namespace pmc {

struct SolverConfig {
  int path_nodes = 33;
  double tol_mp = 1e-5;        // constrained-gradient norm at the min node
  double newton_tol = 1e-9;    // grid residual max-norm
  double climb_enter = 1e-2;   // gradient norm switching to saddle refinement
  int max_ascent = 8000;
  int max_climb = 4000;
  int max_newton = 60;
  double step0 = 0.05;         // initial step, fraction of the sphere radius
  double step_cap = 0.2;
  double reparam_ratio = 1.2;  // node spacing unevenness triggering redistribution
  double lambda0 = 0;          // endpoint concentration; 0 = maximize J over the family
  double rho0 = 0;             // 0 = default_rho0(n)
  double blowup_ratio = 10.0;  // concentration flag threshold
  bool verbose = false;
};

// Clip negatives and rescale onto the energy sphere.
GridFn project_to_S(const GridFn& u, const RadialGrid& g, const ZonalBasis& b);

struct GradResult {
  GridFn values;
  Spectrum spec;
  double norm_e = 0;
};

// E-Riesz representative of dJ_p minus its projection onto u; E-orthogonal
// to u.
GradResult constrained_gradient(const GridFn& u, const GridFn& h, double p,
                                const RadialGrid& g, const ZonalBasis& b);

struct NewtonResult {
  GridFn u;
  double mu = 0;
  double residual_max = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  std::string message;
};

// Damped Newton on the spectral coefficients augmented with the multiplier:
// (k + gamma) a_k = mu gamma (h u^p)_k together with E(u) = gamma |S^{n-1}|.
// Steps that would produce negative nodes are halved, not clipped.
NewtonResult newton_refine(const GridFn& u0, const GridFn& h, double p,
                           const RadialGrid& g, const ZonalBasis& b,
                           double tol = 1e-9, int max_iter = 60);

// w = mu^{1/(p-1)} u solves the boundary equation with multiplier 1.
GridFn rescale_to_solution(const GridFn& u, double mu, double p);

struct Endpoints {
  GridFn psi1, psi2;        // south and north neighborhood representatives
  double lambda1 = 0, lambda2 = 0;
  double j1 = 0, j2 = 0;
};
Endpoints make_endpoints(const CurvatureProfile& prof, double p,
                         const RadialGrid& g, const ZonalBasis& b,
                         const SolverConfig& cfg);

struct MountainPassResult {
  double cp = 0;             // min of J over the final path
  GridFn u_star;             // refined interior minimum node
  double mu = 0;
  double residual_max = 0;
  double j_psi1 = 0, j_psi2 = 0;
  SigmaReport sigma;
  int ascent_iters = 0, climb_iters = 0, newton_iters = 0;
  double grad_norm_final = 0;
  double min_monotonic_delta = 0;  // most negative accepted-step change of the path min
  bool converged = false;
  std::string regime;        // "saddle" or "endpoint"
  std::string message;
};

MountainPassResult mountain_pass(const CurvatureProfile& prof, double p,
                                 const GridFn& psi1, const GridFn& psi2,
                                 const RadialGrid& g, const ZonalBasis& b,
                                 const SolverConfig& cfg = {});

struct ContinuationStep {
  double p = 0;
  double cp = 0;
  double mu = 0;
  double sup_norm = 0;      // sup of the rescaled solution
  double lambda_conc = 0;   // (sup w)^{-(p-1)/2}
  double lambda_star = 0;   // family fit scale
  double q_axial = 0;
  double residual_max = 0;
  bool converged = false;
  bool warm_start = false;
};

struct ContinuationReport {
  std::vector<ContinuationStep> steps;
  bool concentration_flag = false;
  int flag_index = -1;
  std::string message;
};

// Warm-started sweep over an increasing schedule of subcritical exponents.
// Raises CONCENTRATION when the rescaled sup-norm grows monotonically by
// more than cfg.blowup_ratio across the last three steps while the fitted
// scale lambda* shrinks monotonically.
ContinuationReport continuation(const CurvatureProfile& prof,
                                const std::vector<double>& schedule,
                                const RadialGrid& g, const ZonalBasis& b,
                                const SolverConfig& cfg = {});

// Sup over the closed boundary sphere (grid nodes plus both poles).
double sup_norm(const GridFn& u, const RadialGrid& g, const ZonalBasis& b);

}  // namespace pmc
