#include "pmc/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmc {

namespace {

inline double pole_colatitude(const Bubble& b, double r) {
  return b.pole == Pole::South ? r : M_PI - r;
}

}  // namespace

double bubble_boundary(const Bubble& b, double r) {
  const double rho = pole_colatitude(b, r);
  const double c = std::cos(0.5 * rho), s = std::sin(0.5 * rho);
  const double lam = b.lambda;
  return std::pow(lam / (lam * lam * c * c + s * s), 0.5 * (b.n - 2));
}

GridFn bubble_values(const Bubble& b, const RadialGrid& g) {
  GridFn u(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) u[j] = bubble_boundary(b, g.r[j]);
  return u;
}

double bubble_interior(const Bubble& b, const std::vector<double>& y,
                       double s) {
  // Reflection through the equator swaps the poles.
  const double sa = b.pole == Pole::South ? s : -s;
  const double beta = 1.0 / b.lambda;
  double r2 = (sa + 1.0) * (sa + 1.0);
  for (double c : y) r2 += c * c;
  const double q = (beta - 1.0) * (beta - 1.0) * r2 + 4.0 * sa * (beta - 1.0) +
                   4.0 * beta;
  return std::pow(4.0 * beta / q, 0.5 * (b.n - 2));
}

double bubble_normal_derivative(const Bubble& b, double r) {
  if (b.lambda == 1.0) return 0.0;
  const double rho = pole_colatitude(b, r);
  const double beta = 1.0 / b.lambda;
  const double c = std::cos(rho);
  const double q = 2.0 * ((beta * beta + 1.0) - c * (beta * beta - 1.0));
  const double u = std::pow(4.0 * beta / q, 0.5 * (b.n - 2));
  return (2.0 - b.n) * u * (beta - 1.0) * ((beta - 1.0) - (beta + 1.0) * c) / q;
}

GridFn bubble_residual(const Bubble& b, const GridFn& h, double p, double mu,
                       const RadialGrid& g) {
  const double gam = gamma_n(g.n);
  GridFn r(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    double u = bubble_boundary(b, g.r[j]);
    r[j] = bubble_normal_derivative(b, g.r[j]) + gam * u -
           mu * gam * h[j] * std::pow(u, p);
  }
  return r;
}

RadialGrid substituted_grid(const Bubble& b, const RadialGrid& g) {
  if (b.lambda == 1.0) return g;
  if (!(b.lambda > 0) || b.lambda > 1.0)
    throw std::invalid_argument("bubble scale must lie in (0, 1]");
  RadialGrid out = g;
  const double lam = b.lambda;
  const int n = g.n;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double v = pole_colatitude(b, g.r[j]);
    const double t = std::tan(0.5 * v);
    const double den = 1.0 + lam * lam * t * t;
    const double jac = lam * (1.0 + t * t) / den;
    const double cmap = (1.0 - lam * lam * t * t) / den;  // cos of mapped angle
    double rm = 2.0 * std::atan(lam * t);
    if (b.pole == Pole::North) rm = M_PI - rm;
    out.r[j] = rm;
    out.x[j] = b.pole == Pole::South ? cmap : -cmap;
    out.w[j] = g.w[j] * std::pow(jac, n - 1);
  }
  return out;
}

double bubble_j_functional(const Bubble& b,
                           const std::function<double(double)>& h, double p,
                           const RadialGrid& g) {
  RadialGrid sub = substituted_grid(b, g);
  double acc = 0;
  for (std::size_t j = 0; j < sub.size(); ++j) {
    double u = bubble_boundary(b, sub.r[j]);
    acc += sub.w[j] * h(sub.r[j]) * std::pow(u, p + 1.0);
  }
  return g.s_nm2 * acc;
}

double bubble_energy(const Bubble& b, const RadialGrid& g) {
  const double tau = critical_exponent(g.n);
  return gamma_n(g.n) *
         bubble_j_functional(b, [](double) { return 1.0; }, tau, g);
}

double bubble_mass_center(const Bubble& b, const RadialGrid& g) {
  RadialGrid sub = substituted_grid(b, g);
  const double e = critical_exponent(g.n) + 1.0;
  double num = 0, den = 0;
  for (std::size_t j = 0; j < sub.size(); ++j) {
    double d = sub.w[j] * std::pow(bubble_boundary(b, sub.r[j]), e);
    num += d * (1.0 - sub.x[j]);
    den += d;
  }
  return num / den;
}

GridFn t_phi(const GridFn& u, double beta, const RadialGrid& g,
             const ZonalBasis& basis) {
  if (!(beta > 0)) throw std::invalid_argument("dilation requires beta > 0");
  Spectrum a = analyze(u, g, basis);
  const double expo = 0.5 * (g.n - 2);
  GridFn out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = g.r[j];
    const double c2 = std::cos(0.5 * r) * std::cos(0.5 * r);
    const double s2 = 1.0 - c2;
    const double jf = beta / (c2 + beta * beta * s2);
    const double rm = 2.0 * std::atan(beta * std::tan(0.5 * r));
    out[j] = eval_spectrum(a, basis, rm) * std::pow(jf, expo);
  }
  return out;
}

double default_rho0(int n) {
  return 0.1 * std::sqrt(gamma_n(n) * sphere_volume(n - 1));
}

namespace {

// <u, u_lambda>_E through the boundary identity
// <u, w>_E = gamma int u w^tau dsigma valid when w solves the homogeneous
// boundary equation; quadrature on the substituted grid so arbitrarily
// concentrated scales stay exact.
double family_pairing(const Spectrum& au, const ZonalBasis& basis,
                      const Bubble& b, const RadialGrid& g) {
  RadialGrid sub = substituted_grid(b, g);
  const double tau = critical_exponent(g.n);
  double acc = 0;
  for (std::size_t j = 0; j < sub.size(); ++j) {
    double ub = bubble_boundary(b, sub.r[j]);
    acc += sub.w[j] * eval_spectrum(au, basis, sub.r[j]) * std::pow(ub, tau);
  }
  return gamma_n(g.n) * g.s_nm2 * acc;
}

}  // namespace

SigmaReport sigma_decompose(const GridFn& u, Pole pole, const RadialGrid& g,
                            const ZonalBasis& basis, SigmaOptions opt) {
  const double gam = basis.gamma();
  const double gs = gam * g.s_nm1;
  const double rho0 = opt.rho0 > 0 ? opt.rho0 : default_rho0(g.n);

  Spectrum au = analyze(u, g, basis);
  const double eu = energy(au, gam);

  auto pairing = [&](double lam) {
    return family_pairing(au, basis, {lam, pole, g.n}, g);
  };

  // Coarse scan, ties resolved toward the larger scale, then golden-section
  // refinement of F(lambda)^2 in log-lambda on the best bracket.
  const int np = std::max(8, opt.scan_points);
  double best_l = 1.0, best_f2 = -1.0;
  std::vector<double> ls(np), f2(np);
  const double llo = std::log(opt.lambda_lo);
  for (int i = 0; i < np; ++i) {
    double lam = std::exp(llo + (0.0 - llo) * i / (np - 1));
    double f = pairing(lam);
    ls[i] = lam;
    f2[i] = f * f;
    if (f2[i] >= best_f2) {
      best_f2 = f2[i];
      best_l = lam;
    }
  }
  int bi = 0;
  for (int i = 0; i < np; ++i)
    if (f2[i] >= f2[bi]) bi = i;
  double lo = std::log(ls[std::max(0, bi - 1)]);
  double hi = std::log(ls[std::min(np - 1, bi + 1)]);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double g1 = std::pow(pairing(std::exp(x1)), 2);
  double g2 = std::pow(pairing(std::exp(x2)), 2);
  for (int it = 0; it < opt.golden_iters; ++it) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + gr * (hi - lo);
      g2 = std::pow(pairing(std::exp(x2)), 2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - gr * (hi - lo);
      g1 = std::pow(pairing(std::exp(x1)), 2);
    }
  }
  double lam_star = std::exp(0.5 * (lo + hi));
  if (std::pow(pairing(best_l), 2) > std::max(g1, g2)) lam_star = best_l;
  lam_star = std::min(lam_star, 1.0);

  SigmaReport rep;
  rep.pole = pole;
  rep.lambda_star = lam_star;
  rep.converged = std::isfinite(lam_star) && lam_star > 0;
  double f = pairing(lam_star);
  rep.t0 = f / gs;
  Bubble bb{lam_star, pole, g.n};
  GridFn ub = bubble_values(bb, g);
  rep.v.resize(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) rep.v[j] = u[j] - rep.t0 * ub[j];
  rep.rho_v = std::sqrt(std::max(0.0, eu - rep.t0 * rep.t0 * gs));
  rep.q_axial = mass_center_axial(u, g);
  rep.q_dist = pole == Pole::South ? rep.q_axial : 2.0 - rep.q_axial;
  rep.beta_fit = pole == Pole::South ? lam_star : 1.0 / lam_star;
  rep.inside_sigma = rep.rho_v <= rho0 && rep.q_dist <= rho0;
  if (opt.require_t_near_one)
    rep.inside_sigma = rep.inside_sigma && std::abs(rep.t0 - 1.0) <= opt.t_window;
  return rep;
}

std::pair<double, double> orthogonality_check(const GridFn& v,
                                              double lambda_star, Pole pole,
                                              const RadialGrid& g,
                                              const ZonalBasis& basis) {
  GridFn w = v;
  if (pole == Pole::North) std::reverse(w.begin(), w.end());
  w = t_phi(w, lambda_star, g, basis);
  const double gam = basis.gamma();
  double p1 = 0, p2 = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    p1 += g.w[j] * w[j];
    p2 += g.w[j] * (-g.x[j]) * w[j];  // centered axial coordinate -cos r
  }
  p1 *= gam * g.s_nm2;
  p2 *= (1.0 + gam) * g.s_nm2;
  return {p1, p2};
}

double critical_secondary_check(const GridFn& v, double lambda_star, Pole pole,
                                const RadialGrid& g) {
  const double tau = critical_exponent(g.n);
  Bubble b{lambda_star, pole, g.n};
  double acc = 0;
  for (std::size_t j = 0; j < g.size(); ++j)
    acc += g.w[j] * std::pow(bubble_boundary(b, g.r[j]), tau) * v[j];
  return g.s_nm2 * acc;
}

}  // namespace pmc
