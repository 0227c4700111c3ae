#include "pmc/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace pmc {

ZonalBasis make_basis(const RadialGrid& g, int kmax) {
  const std::size_t m = g.size();
  if (kmax < 0 || kmax > static_cast<int>(m) - 1)
    throw std::invalid_argument(
        "basis cutoff must satisfy 0 <= kmax <= m-1 for exact quadrature");
  ZonalBasis b;
  b.n = g.n;
  b.kmax = kmax;
  b.lam = 0.5 * (g.n - 2);
  b.m = m;
  const std::size_t k1 = kmax + 1;
  b.y.resize(k1 * m);
  kernels::gegenbauer_matrix(b.lam, g.x.data(), m, kmax, b.y.data());

  // Normalize in L^2(S^{n-1}) by the quadrature itself; products of two
  // retained degrees are integrated exactly, so the rows come out
  // orthonormal to machine precision.
  b.cnorm.resize(k1);
  for (std::size_t k = 0; k < k1; ++k) {
    double* row = b.y.data() + k * m;
    double nu2 = 0;
    for (std::size_t j = 0; j < m; ++j) nu2 += g.w[j] * row[j] * row[j];
    nu2 *= g.s_nm2;
    double c = 1.0 / std::sqrt(nu2);
    b.cnorm[k] = c;
    for (std::size_t j = 0; j < m; ++j) row[j] *= c;
  }
  b.yt.resize(m * k1);
  for (std::size_t k = 0; k < k1; ++k)
    for (std::size_t j = 0; j < m; ++j) b.yt[j * k1 + k] = b.y[k * m + j];
  return b;
}

Spectrum analyze(const GridFn& u, const RadialGrid& g, const ZonalBasis& b) {
  if (u.size() != b.m) throw std::invalid_argument("grid size mismatch");
  std::vector<double> wf(b.m);
  for (std::size_t j = 0; j < b.m; ++j) wf[j] = g.s_nm2 * g.w[j] * u[j];
  Spectrum a(b.kmax + 1);
  kernels::analyze_apply(b.y.data(), b.m, b.kmax + 1, wf.data(), a.data());
  return a;
}

GridFn synthesize(const Spectrum& a, const ZonalBasis& b) {
  if (a.size() != static_cast<std::size_t>(b.kmax + 1))
    throw std::invalid_argument("spectrum size mismatch");
  GridFn u(b.m);
  kernels::synth_apply(b.yt.data(), b.m, b.kmax + 1, a.data(), u.data());
  return u;
}

Spectrum dtn_spectrum(Spectrum a) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= static_cast<double>(k);
  return a;
}

GridFn dtn_apply(const GridFn& u, const RadialGrid& g, const ZonalBasis& b) {
  return synthesize(dtn_spectrum(analyze(u, g, b)), b);
}

double eval_spectrum(const Spectrum& a, const ZonalBasis& b, double r) {
  const double x = std::cos(r);
  const double lam = b.lam;
  double c0 = 1.0;
  double acc = a[0] * b.cnorm[0] * c0;
  if (a.size() == 1) return acc;
  double c1 = 2.0 * lam * x;
  acc += a[1] * b.cnorm[1] * c1;
  for (std::size_t k = 1; k + 1 < a.size(); ++k) {
    double c2 = (2.0 * (k + lam) * x * c1 - (k + 2.0 * lam - 1.0) * c0) /
                static_cast<double>(k + 1);
    acc += a[k + 1] * b.cnorm[k + 1] * c2;
    c0 = c1;
    c1 = c2;
  }
  return acc;
}

GridFn eval_spectrum_many(const Spectrum& a, const ZonalBasis& b,
                          const std::vector<double>& rs) {
  GridFn out(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) out[i] = eval_spectrum(a, b, rs[i]);
  return out;
}

double tail_fraction(const Spectrum& a) {
  double total = 0, tail = 0;
  std::size_t start = a.size() - std::max<std::size_t>(1, a.size() / 10);
  for (std::size_t k = 0; k < a.size(); ++k) {
    double s = a[k] * a[k];
    total += s;
    if (k >= start) tail += s;
  }
  return total > 0 ? tail / total : 0.0;
}

double energy(const Spectrum& a, double gamma) {
  double e = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    e += (static_cast<double>(k) + gamma) * a[k] * a[k];
  return e;
}

double energy(const GridFn& u, const RadialGrid& g, const ZonalBasis& b,
              double* tail) {
  Spectrum a = analyze(u, g, b);
  if (tail) *tail = tail_fraction(a);
  return energy(a, b.gamma());
}

double inner_e(const Spectrum& a, const Spectrum& c, double gamma) {
  if (a.size() != c.size()) throw std::invalid_argument("spectrum size mismatch");
  double e = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    e += (static_cast<double>(k) + gamma) * a[k] * c[k];
  return e;
}

double j_functional(const GridFn& u, const GridFn& h, double p,
                    const RadialGrid& g) {
  const double tau = critical_exponent(g.n);
  if (!(p > 1.0) || p > tau + 1e-9)
    throw std::invalid_argument("exponent must satisfy 1 < p <= n/(n-2)");
  if (u.size() != g.size() || h.size() != g.size())
    throw std::invalid_argument("grid size mismatch");
  double acc = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] < -1e-12) throw std::domain_error("negative boundary values");
    double uj = u[j] > 0 ? u[j] : 0.0;
    acc += g.w[j] * h[j] * std::pow(uj, p + 1.0);
  }
  return g.s_nm2 * acc;
}

GridFn residual_from_dtn(const GridFn& u, const GridFn& dtn, const GridFn& h,
                         double p, double mu, const RadialGrid& g) {
  const double gam = gamma_n(g.n);
  GridFn r(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    double uj = u[j] > 0 ? u[j] : 0.0;
    r[j] = dtn[j] + gam * u[j] - mu * gam * h[j] * std::pow(uj, p);
  }
  return r;
}

GridFn residual(const GridFn& u, const GridFn& h, double p, double mu,
                const RadialGrid& g, const ZonalBasis& b) {
  return residual_from_dtn(u, dtn_apply(u, g, b), h, p, mu, g);
}

double mass_center_axial(const GridFn& u, const RadialGrid& g) {
  const double e = critical_exponent(g.n) + 1.0;
  double num = 0, den = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double uj = u[j] > 0 ? u[j] : 0.0;
    double d = g.w[j] * std::pow(uj, e);
    num += d * (1.0 - g.x[j]);
    den += d;
  }
  if (den < 1e-300) throw std::domain_error("mass center of the zero function");
  return num / den;
}

}  // namespace pmc
