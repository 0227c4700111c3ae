#pragma once

#include <vector>

#include "pmc/grid.hpp"
#include "pmc/kernels.hpp"

namespace pmc {

// Boundary trace sampled at the grid nodes.
using GridFn = std::vector<double>;
// Coefficients in the orthonormal zonal basis, index = harmonic degree.
using Spectrum = std::vector<double>;

// Zonal harmonics C_k^{(n-2)/2}(cos r), orthonormalized in L^2(S^{n-1})
// with the grid quadrature. Rows are exactly orthonormal for kmax <= m-1.
struct ZonalBasis {
  int n = 0;
  int kmax = 0;
  double lam = 0;              // Gegenbauer order (n-2)/2
  std::size_t m = 0;           // node count
  std::vector<double> y;       // (kmax+1) x m
  std::vector<double> yt;      // m x (kmax+1)
  std::vector<double> cnorm;   // per-degree normalization constants
  double gamma() const { return 0.5 * (n - 2); }
};

ZonalBasis make_basis(const RadialGrid& g, int kmax);

Spectrum analyze(const GridFn& u, const RadialGrid& g, const ZonalBasis& b);
GridFn synthesize(const Spectrum& a, const ZonalBasis& b);

// Dirichlet-to-Neumann map of the harmonic extension: degree k scales by k.
Spectrum dtn_spectrum(Spectrum a);
GridFn dtn_apply(const GridFn& u, const RadialGrid& g, const ZonalBasis& b);

// Evaluate a spectrum at an arbitrary colatitude.
double eval_spectrum(const Spectrum& a, const ZonalBasis& b, double r);
GridFn eval_spectrum_many(const Spectrum& a, const ZonalBasis& b,
                          const std::vector<double>& rs);

// Share of coefficient mass carried by the top decile of degrees.
double tail_fraction(const Spectrum& a);

// E(u) = int |grad u|^2 + gamma int u^2 = sum (k + gamma) a_k^2.
double energy(const Spectrum& a, double gamma);
// Spectral energy of a grid function; *tail (optional) receives the
// tail-coefficient fraction so callers can detect aliasing (> 1e-8 of the
// total is suspect).
double energy(const GridFn& u, const RadialGrid& g, const ZonalBasis& b,
              double* tail = nullptr);
double inner_e(const Spectrum& a, const Spectrum& c, double gamma);

// int h u^{p+1} dsigma, 1 < p <= n/(n-2). Negative nodes are rejected.
double j_functional(const GridFn& u, const GridFn& h, double p,
                    const RadialGrid& g);

// Pointwise boundary residual dtn + gamma u - mu gamma h u^p.
GridFn residual_from_dtn(const GridFn& u, const GridFn& dtn, const GridFn& h,
                         double p, double mu, const RadialGrid& g);
GridFn residual(const GridFn& u, const GridFn& h, double p, double mu,
                const RadialGrid& g, const ZonalBasis& b);

// Axial mass center in south-pole coordinates, q_n in [0, 2], computed from
// the boundary density u^{tau+1}.
double mass_center_axial(const GridFn& u, const RadialGrid& g);

}  // namespace pmc
