#pragma once

#include <string>
#include <vector>

#include "pmc/curvature.hpp"
#include "pmc/solver.hpp"

// Verification checks keyed to the closed-form identities and asymptotics of
// the problem. Each check is deterministic (fixed seeds, fixed quadrature).

namespace pmc::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool warn_only = false;   // informative failure, does not gate
  double measured = 0;
  double threshold = 0;
  std::string detail;
};

// |S^{n-2}| int sin^{n-2} = |S^{n-1}| for n = 3..8.
CheckResult check_volume_identity();
// Gauss exactness of the grid against the moment recurrence.
CheckResult check_quadrature_exactness(int n, int m);
// E(u_lambda) = gamma |S^{n-1}| on the substituted grid, n in {3,4,5}.
CheckResult check_bubble_normalization(int m);
// Closed-form boundary residual of the family at the critical exponent.
CheckResult check_family_residual(int m);
// Degree-k harmonics scale by k under the Dirichlet-to-Neumann map.
CheckResult check_steklov_diagonal(int n, int m, int kmax);
// J_tau(u_lambda) -> h(0)|S^{n-1}| as lambda -> 0 for the flat profile.
CheckResult check_curvature_limit(int m);
// Log-log slope of the bubble mass center equals 2.
CheckResult check_mass_center_law(int m);
// Orthogonality of the fitted residual, both the E-pairing and the
// boundary pairing with u^tau.
CheckResult check_decomposition_orthogonality(int m);
// Constrained gradient against central finite differences.
CheckResult check_gradient_fd(int m);
// Family deficit upper bound h(0)|S^{n-1}| - J >= C lambda^alpha, C > 0.
CheckResult check_deficit_power_law(int m);
// Max of J over constructed boundary-of-sigma samples stays below the
// neighborhood representative by a positive margin.
CheckResult check_sigma_barrier(int m, int n_samples, double p_frac);
// rho0 <= q + C |v| with finite C over the boundary samples.
CheckResult check_triangle_bound(int m);
// Spectral Dirichlet energy equals the boundary quadrature of u dn(u).
CheckResult check_green_identity(int n, int m, int kmax);
// Stereographic involution, boundary preservation, norm identity, Kelvin.
CheckResult check_geometry_identities(int n);
// E and int u^{tau+1} invariance under the conformal reparametrization.
CheckResult check_tphi_invariance(int m);
// Pairings of the reparametrized residual with constants and coordinates.
CheckResult check_orthogonality_pairings(int m);
// Endpoint values J_p(psi) near h(pole)|S^{n-1}| close to the critical
// exponent.
CheckResult check_endpoint_values(int m);
// Mass-center reflection symmetry q(u mirrored) = 2 - q(u).
CheckResult check_mass_center_reflection(int n, int m);

struct VerifyOptions {
  int n = 3;
  int grid_m = 256;
  int kmax = 0;  // 0 -> m/2
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

}  // namespace pmc::checks
