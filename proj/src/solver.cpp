#include "pmc/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pmc/util.hpp"

namespace pmc {

namespace {

GridFn profile_values(const CurvatureProfile& prof, const RadialGrid& g) {
  GridFn h(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) h[j] = prof.h(g.r[j]);
  return h;
}

Spectrum lincomb(const Spectrum& a, double ca, const Spectrum& b, double cb) {
  Spectrum out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = ca * a[k] + cb * b[k];
  return out;
}

// J on the positive part; tolerates the roundoff negatives of synthesized
// iterates.
double j_clipped(const GridFn& u, const GridFn& h, double p,
                 const RadialGrid& g) {
  double acc = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double uj = u[j] > 0 ? u[j] : 0.0;
    acc += g.w[j] * h[j] * std::pow(uj, p + 1.0);
  }
  return g.s_nm2 * acc;
}

// Great-circle interpolation between two points of the energy sphere, in
// coefficient space with the E inner product.
Spectrum slerp(const Spectrum& a, const Spectrum& b, double t, double gamma) {
  double na = std::sqrt(inner_e(a, a, gamma));
  double nb = std::sqrt(inner_e(b, b, gamma));
  double cw = inner_e(a, b, gamma) / (na * nb);
  cw = std::clamp(cw, -1.0, 1.0);
  double w = std::acos(cw);
  if (w < 1e-9) return lincomb(a, 1.0 - t, b, t);
  double sw = std::sin(w);
  return lincomb(a, std::sin((1.0 - t) * w) / sw, b, std::sin(t * w) / sw);
}

struct Path {
  const RadialGrid& g;
  const ZonalBasis& basis;
  const GridFn& h;
  double p;
  double gamma;
  std::vector<GridFn> v;      // node values
  std::vector<Spectrum> a;    // node spectra
  std::vector<double> j;      // node functional values

  Path(const RadialGrid& gg, const ZonalBasis& bb, const GridFn& hh, double pp)
      : g(gg), basis(bb), h(hh), p(pp), gamma(bb.gamma()) {}

  void set_node(std::size_t i, const GridFn& values) {
    v[i] = project_to_S(values, g, basis);
    a[i] = analyze(v[i], g, basis);
    j[i] = j_functional(v[i], h, p, g);
  }

  void set_node_from_spectrum(std::size_t i, const Spectrum& s) {
    set_node(i, synthesize(s, basis));
  }

  std::size_t interior_argmin() const {
    std::size_t best = 1;
    for (std::size_t i = 2; i + 1 < v.size(); ++i)
      if (j[i] < j[best]) best = i;
    return best;
  }

  double min_all() const {
    double m = j[0];
    for (double x : j) m = std::min(m, x);
    return m;
  }

  // Redistribute the nodes of [lo, hi] to equal E-chord spacing, both ends
  // held fixed.
  void redistribute(std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return;
    std::vector<double> len(hi - lo);
    std::vector<Spectrum> olda(a.begin() + lo, a.begin() + hi + 1);
    double total = 0;
    for (std::size_t i = 0; i < len.size(); ++i) {
      Spectrum d = lincomb(olda[i + 1], 1.0, olda[i], -1.0);
      len[i] = std::sqrt(std::max(0.0, inner_e(d, d, gamma)));
      total += len[i];
    }
    if (total < 1e-14) return;
    for (std::size_t i = 1; i < hi - lo; ++i) {
      double target = total * i / (hi - lo);
      std::size_t seg = 0;
      double acc = 0;
      while (seg + 1 < len.size() && acc + len[seg] < target) {
        acc += len[seg];
        ++seg;
      }
      double frac = len[seg] > 0 ? (target - acc) / len[seg] : 0.0;
      set_node_from_spectrum(lo + i,
                             slerp(olda[seg], olda[seg + 1], frac, gamma));
    }
  }

  bool uneven(double ratio) const {
    double mn = std::numeric_limits<double>::max(), mx = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      Spectrum d = lincomb(a[i + 1], 1.0, a[i], -1.0);
      double l = std::sqrt(std::max(0.0, inner_e(d, d, gamma)));
      mn = std::min(mn, l);
      mx = std::max(mx, l);
    }
    return mn <= 0 || mx / mn > ratio;
  }
};

}  // namespace

GridFn project_to_S(const GridFn& u, const RadialGrid& g, const ZonalBasis& b) {
  GridFn out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j] > 0 ? u[j] : 0.0;
  double e = energy(out, g, b);
  if (e < 1e-300) throw std::domain_error("cannot project the zero function");
  double s = std::sqrt(b.gamma() * g.s_nm1 / e);
  for (double& x : out) x *= s;
  return out;
}

GradResult constrained_gradient(const GridFn& u, const GridFn& h, double p,
                                const RadialGrid& g, const ZonalBasis& b) {
  const double gam = b.gamma();
  Spectrum au = analyze(u, g, b);
  GridFn f(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    double uj = u[j] > 0 ? u[j] : 0.0;
    f[j] = h[j] * std::pow(uj, p);
  }
  Spectrum bf = analyze(f, g, b);
  Spectrum grad(bf.size());
  for (std::size_t k = 0; k < bf.size(); ++k)
    grad[k] = (p + 1.0) * bf[k] / (static_cast<double>(k) + gam);
  double c = inner_e(grad, au, gam) / inner_e(au, au, gam);
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] -= c * au[k];
  GradResult res;
  res.norm_e = std::sqrt(std::max(0.0, inner_e(grad, grad, gam)));
  res.spec = std::move(grad);
  res.values = synthesize(res.spec, b);
  return res;
}

NewtonResult newton_refine(const GridFn& u0, const GridFn& h, double p,
                           const RadialGrid& g, const ZonalBasis& b,
                           double tol, int max_iter) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const double gam = b.gamma();
  const double gs = gam * g.s_nm1;
  const std::size_t m = g.size();
  const std::size_t k1 = b.kmax + 1;
  const std::size_t nn = k1 + 1;  // coefficients plus the multiplier

  NewtonResult res;
  Spectrum a = analyze(u0, g, b);
  GridFn u = synthesize(a, b);
  double mu = energy(a, gam) / (gam * j_clipped(u, h, p, g));

  Eigen::Map<const MatrixXd> ymat(b.y.data(), m, k1);   // column-major view of y^T
  // b.y is row-major (k1 x m); mapping it as (m x k1) column-major gives the
  // transpose, which is exactly the synthesis matrix.

  auto grid_residual = [&](const Spectrum& aa, const GridFn& uu,
                           double mmu) -> GridFn {
    GridFn d = synthesize(dtn_spectrum(aa), b);
    return residual_from_dtn(uu, d, h, p, mmu, g);
  };

  GridFn r = grid_residual(a, u, mu);
  double rmax = max_abs(r);
  res.residual_history.push_back(rmax);

  VectorXd rhs(nn);
  MatrixXd jac(nn, nn);
  for (int it = 0; it < max_iter; ++it) {
    if (rmax < tol) {
      res.converged = true;
      break;
    }
    // Coefficient-space equations (k+gam) a_k - mu gam (h u^p)_k and the
    // energy constraint.
    GridFn hup(m), hup1(m);
    for (std::size_t j = 0; j < m; ++j) {
      double uj = u[j] > 0 ? u[j] : 0.0;
      hup[j] = h[j] * std::pow(uj, p);
      hup1[j] = h[j] * p * std::pow(uj, p - 1.0);
    }
    Spectrum fh = analyze(hup, g, b);
    for (std::size_t k = 0; k < k1; ++k)
      rhs[k] = -((static_cast<double>(k) + gam) * a[k] - mu * gam * fh[k]);
    rhs[k1] = -(energy(a, gam) - gs);

    // jac = diag(k+gam) - mu gam Y diag(c_j h_j p u^{p-1}) Y^T
    VectorXd scale(m);
    for (std::size_t j = 0; j < m; ++j)
      scale[j] = g.s_nm2 * g.w[j] * hup1[j];
    MatrixXd tmp = scale.asDiagonal() * ymat;        // m x k1
    jac.setZero();
    jac.topLeftCorner(k1, k1).noalias() = -mu * gam * (ymat.transpose() * tmp);
    for (std::size_t k = 0; k < k1; ++k)
      jac(k, k) += static_cast<double>(k) + gam;
    for (std::size_t k = 0; k < k1; ++k) {
      jac(k, k1) = -gam * fh[k];
      jac(k1, k) = 2.0 * (static_cast<double>(k) + gam) * a[k];
    }
    jac(k1, k1) = 0.0;

    VectorXd delta = jac.partialPivLu().solve(rhs);
    if (!delta.allFinite()) {
      res.message = "singular Jacobian";
      break;
    }

    // Damped step: halve when nodes would go negative or the residual fails
    // to decrease.
    double alpha = 1.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      Spectrum at(k1);
      for (std::size_t k = 0; k < k1; ++k) at[k] = a[k] + alpha * delta[k];
      double mut = mu + alpha * delta[k1];
      GridFn ut = synthesize(at, b);
      double mn = 0;
      for (double x : ut) mn = std::min(mn, x);
      if (mn < -1e-12) {
        alpha *= 0.5;
        continue;
      }
      GridFn rt = grid_residual(at, ut, mut);
      double rtmax = max_abs(rt);
      if (rtmax <= (1.0 - 1e-4 * alpha) * rmax || rtmax < tol) {
        a = std::move(at);
        u = std::move(ut);
        mu = mut;
        r = std::move(rt);
        rmax = rtmax;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    res.iterations = it + 1;
    res.residual_history.push_back(rmax);
    if (!accepted) {
      res.message = "step rejected after damping";
      break;
    }
  }
  if (rmax < tol) res.converged = true;
  res.u = std::move(u);
  res.mu = mu;
  res.residual_max = rmax;
  return res;
}

GridFn rescale_to_solution(const GridFn& u, double mu, double p) {
  if (!(mu > 0))
    throw std::domain_error("nonpositive multiplier does not rescale to a solution");
  if (!(p > 1)) throw std::invalid_argument("exponent must exceed 1");
  double s = std::pow(mu, 1.0 / (p - 1.0));
  GridFn w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w[j] = s * u[j];
  return w;
}

double sup_norm(const GridFn& u, const RadialGrid& g, const ZonalBasis& b) {
  double s = max_abs(u);
  Spectrum a = analyze(u, g, b);
  s = std::max(s, std::abs(eval_spectrum(a, b, 0.0)));
  s = std::max(s, std::abs(eval_spectrum(a, b, M_PI)));
  return s;
}

Endpoints make_endpoints(const CurvatureProfile& prof, double p,
                         const RadialGrid& g, const ZonalBasis& b,
                         const SolverConfig& cfg) {
  Endpoints ep;
  auto pick = [&](Pole pole) {
    if (cfg.lambda0 > 0) return cfg.lambda0;
    // Maximize J over the family, within the spectrally resolvable range.
    double lo = std::max(0.03, 8.0 / b.kmax);
    auto ls = logspace(lo, 0.7, 48);
    double best = ls[0], bj = -std::numeric_limits<double>::max();
    for (double lam : ls) {
      double jv = bubble_j_functional({lam, pole, g.n}, prof.h, p, g);
      if (jv > bj) {
        bj = jv;
        best = lam;
      }
    }
    return best;
  };
  ep.lambda1 = pick(Pole::South);
  ep.lambda2 = pick(Pole::North);
  ep.psi1 = project_to_S(bubble_values({ep.lambda1, Pole::South, g.n}, g), g, b);
  ep.psi2 = project_to_S(bubble_values({ep.lambda2, Pole::North, g.n}, g), g, b);
  GridFn h = profile_values(prof, g);
  ep.j1 = j_functional(ep.psi1, h, p, g);
  ep.j2 = j_functional(ep.psi2, h, p, g);
  return ep;
}

MountainPassResult mountain_pass(const CurvatureProfile& prof, double p,
                                 const GridFn& psi1, const GridFn& psi2,
                                 const RadialGrid& g, const ZonalBasis& b,
                                 const SolverConfig& cfg) {
  const double gam = b.gamma();
  const double gs = gam * g.s_nm1;
  const double radius = std::sqrt(gs);
  const int n_nodes = std::max(5, cfg.path_nodes);

  MountainPassResult res;
  GridFn h = profile_values(prof, g);

  Path path(g, b, h, p);
  path.v.resize(n_nodes);
  path.a.resize(n_nodes);
  path.j.resize(n_nodes);
  path.set_node(0, psi1);
  path.set_node(n_nodes - 1, psi2);
  res.j_psi1 = path.j[0];
  res.j_psi2 = path.j[n_nodes - 1];

  // Degenerate path: identical representatives.
  {
    Spectrum d = lincomb(path.a[0], 1.0, path.a[n_nodes - 1], -1.0);
    if (std::sqrt(std::max(0.0, inner_e(d, d, gam))) < 1e-12 * radius) {
      res.cp = path.j[0];
      res.u_star = path.v[0];
      res.mu = energy(path.a[0], gam) / (gam * path.j[0]);
      res.converged = true;
      res.regime = "degenerate";
      res.message = "endpoints coincide, constant path";
      return res;
    }
  }

  for (int i = 1; i + 1 < n_nodes; ++i)
    path.set_node_from_spectrum(
        i, slerp(path.a[0], path.a[n_nodes - 1],
                 static_cast<double>(i) / (n_nodes - 1), gam));

  const double endpoint_min = std::min(path.j[0], path.j[n_nodes - 1]);
  double step = cfg.step0;
  int endpoint_regime_count = 0;
  res.min_monotonic_delta = 0;
  std::size_t imin = path.interior_argmin();
  GradResult grad = constrained_gradient(path.v[imin], h, p, g, b);

  // Phase 1: push the lowest interior node uphill, keep the chain evenly
  // spread in the E-metric.
  for (int it = 0; it < cfg.max_ascent; ++it) {
    res.ascent_iters = it + 1;
    imin = path.interior_argmin();
    grad = constrained_gradient(path.v[imin], h, p, g, b);
    if (grad.norm_e < cfg.climb_enter) break;
    if (path.j[imin] > endpoint_min) {
      if (++endpoint_regime_count > 50) break;
    } else {
      endpoint_regime_count = 0;
    }

    // Ties move together.
    std::vector<std::size_t> movers;
    for (std::size_t i = 1; i + 1 < path.v.size(); ++i)
      if (path.j[i] <= path.j[imin] + 1e-10) movers.push_back(i);

    double jmin_before = path.min_all();
    bool any_accept = false;
    for (std::size_t i : movers) {
      GradResult gi = i == imin ? grad : constrained_gradient(path.v[i], h, p, g, b);
      if (gi.norm_e < 1e-15) continue;
      double jold = path.j[i];
      GridFn uold = path.v[i];
      bool ok = false;
      for (int bt = 0; bt < 25; ++bt) {
        GridFn trial(uold.size());
        double s = step * radius / gi.norm_e;
        for (std::size_t jj = 0; jj < uold.size(); ++jj)
          trial[jj] = uold[jj] + s * gi.values[jj];
        path.set_node(i, trial);
        if (path.j[i] > jold + 1e-14) {
          ok = true;
          break;
        }
        path.set_node(i, uold);
        step *= 0.5;
        if (step < 1e-13) break;
      }
      if (ok) {
        any_accept = true;
        step = std::min(step * 1.25, cfg.step_cap);
      }
    }
    if (any_accept)
      res.min_monotonic_delta =
          std::min(res.min_monotonic_delta, path.min_all() - jmin_before);
    if (!any_accept && step < 1e-13) break;
    if (path.uneven(cfg.reparam_ratio)) path.redistribute(0, n_nodes - 1);
  }

  imin = path.interior_argmin();
  const bool endpoint_regime = path.j[imin] > endpoint_min;
  res.regime = endpoint_regime ? "endpoint" : "saddle";

  std::size_t istar = imin;
  if (endpoint_regime) {
    // The path minimum sits at a fixed endpoint; the critical-point
    // candidate is the flattest interior node.
    double bestg = std::numeric_limits<double>::max();
    for (std::size_t i = 1; i + 1 < path.v.size(); ++i) {
      GradResult gi = constrained_gradient(path.v[i], h, p, g, b);
      if (gi.norm_e < bestg) {
        bestg = gi.norm_e;
        istar = i;
      }
    }
    grad = constrained_gradient(path.v[istar], h, p, g, b);
  } else {
    // Phase 2: saddle refinement. Ascend transversally, descend along the
    // path tangent, which drives the node onto the pass.
    double cstep = std::max(step, 1e-4);
    for (int it = 0; it < cfg.max_climb; ++it) {
      res.climb_iters = it + 1;
      istar = path.interior_argmin();
      grad = constrained_gradient(path.v[istar], h, p, g, b);
      if (grad.norm_e < cfg.tol_mp) break;

      Spectrum tan = lincomb(path.a[istar + 1], 1.0, path.a[istar - 1], -1.0);
      double ct = inner_e(tan, path.a[istar], gam) /
                  inner_e(path.a[istar], path.a[istar], gam);
      for (std::size_t k = 0; k < tan.size(); ++k)
        tan[k] -= ct * path.a[istar][k];
      double tn = std::sqrt(std::max(0.0, inner_e(tan, tan, gam)));

      Spectrum dir = grad.spec;
      if (tn > 1e-12 * radius) {
        double gt = inner_e(grad.spec, tan, gam) / (tn * tn);
        for (std::size_t k = 0; k < dir.size(); ++k)
          dir[k] -= 2.0 * gt * tan[k];
      }
      double dn = std::sqrt(std::max(0.0, inner_e(dir, dir, gam)));
      if (dn < 1e-15) break;

      GridFn dirv = synthesize(dir, b);
      GridFn uold = path.v[istar];
      bool ok = false;
      for (int bt = 0; bt < 25; ++bt) {
        GridFn trial(uold.size());
        double s = cstep * radius / dn;
        for (std::size_t jj = 0; jj < uold.size(); ++jj)
          trial[jj] = uold[jj] + s * dirv[jj];
        path.set_node(istar, trial);
        GradResult gtrial = constrained_gradient(path.v[istar], h, p, g, b);
        if (gtrial.norm_e < grad.norm_e) {
          ok = true;
          grad = gtrial;
          break;
        }
        path.set_node(istar, uold);
        cstep *= 0.5;
        if (cstep < 1e-13) break;
      }
      if (!ok) break;
      cstep = std::min(cstep * 1.2, cfg.step_cap);
      if (path.uneven(cfg.reparam_ratio)) {
        path.redistribute(0, istar);
        path.redistribute(istar, n_nodes - 1);
      }
    }
  }
  res.grad_norm_final = grad.norm_e;

  NewtonResult nr = newton_refine(path.v[istar], h, p, g, b, cfg.newton_tol,
                                  cfg.max_newton);
  res.newton_iters = nr.iterations;
  res.residual_max = nr.residual_max;
  res.mu = nr.mu;
  res.u_star = nr.converged ? nr.u : path.v[istar];
  if (nr.converged) path.set_node(istar, nr.u);
  res.converged = nr.converged &&
                  (endpoint_regime || grad.norm_e < 10.0 * cfg.tol_mp);
  if (!nr.converged) res.message = "newton refinement failed: " + nr.message;

  res.cp = path.min_all();

  Pole side = mass_center_axial(res.u_star, g) <= 1.0 ? Pole::South : Pole::North;
  SigmaOptions so;
  so.rho0 = cfg.rho0;
  res.sigma = sigma_decompose(res.u_star, side, g, b, so);
  return res;
}

ContinuationReport continuation(const CurvatureProfile& prof,
                                const std::vector<double>& schedule,
                                const RadialGrid& g, const ZonalBasis& b,
                                const SolverConfig& cfg) {
  ContinuationReport rep;
  const double tau = critical_exponent(g.n);
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1]))
      throw std::invalid_argument("schedule must increase strictly");
  for (double p : schedule)
    if (!(p > 1.0) || p >= tau)
      throw std::invalid_argument("schedule values must lie in (1, tau)");

  GridFn h = profile_values(prof, g);
  GridFn prev;
  bool have_prev = false;

  for (double p : schedule) {
    ContinuationStep step;
    step.p = p;
    bool done = false;
    if (have_prev) {
      NewtonResult nr = newton_refine(prev, h, p, g, b, cfg.newton_tol,
                                      cfg.max_newton);
      if (nr.converged && nr.mu > 0) {
        step.warm_start = true;
        step.converged = true;
        step.mu = nr.mu;
        step.residual_max = nr.residual_max;
        step.cp = j_clipped(nr.u, h, p, g);
        prev = nr.u;
        done = true;
      }
    }
    if (!done) {
      Endpoints ep = make_endpoints(prof, p, g, b, cfg);
      MountainPassResult mp = mountain_pass(prof, p, ep.psi1, ep.psi2, g, b, cfg);
      step.converged = mp.converged;
      step.mu = mp.mu;
      step.residual_max = mp.residual_max;
      step.cp = mp.cp;
      if (mp.converged) {
        prev = mp.u_star;
        done = true;
      }
    }
    if (done) {
      have_prev = true;
      GridFn w = rescale_to_solution(prev, step.mu, p);
      step.sup_norm = sup_norm(w, g, b);
      step.lambda_conc = std::pow(step.sup_norm, -0.5 * (p - 1.0));
      Pole side = mass_center_axial(prev, g) <= 1.0 ? Pole::South : Pole::North;
      SigmaOptions so;
      so.rho0 = cfg.rho0;
      SigmaReport sr = sigma_decompose(prev, side, g, b, so);
      step.lambda_star = sr.lambda_star;
      step.q_axial = sr.q_axial;
    }
    rep.steps.push_back(step);

    // Concentration heuristic: monotone sup-norm growth beyond the ratio
    // across the last three steps together with a monotone shrink of the
    // fitted scale.
    std::size_t i = rep.steps.size();
    if (!rep.concentration_flag && i >= 4) {
      const auto& s = rep.steps;
      bool grow = true, shrink = true, allok = true;
      for (std::size_t k = i - 3; k < i; ++k) {
        if (!s[k].converged || !s[k - 1].converged) allok = false;
        if (!(s[k].sup_norm > s[k - 1].sup_norm)) grow = false;
        if (!(s[k].lambda_star < s[k - 1].lambda_star)) shrink = false;
      }
      if (allok && grow && shrink &&
          s[i - 1].sup_norm > cfg.blowup_ratio * s[i - 4].sup_norm) {
        rep.concentration_flag = true;
        rep.flag_index = static_cast<int>(i) - 1;
      }
    }
  }
  return rep;
}

}  // namespace pmc
