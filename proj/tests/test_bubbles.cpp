#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pmc/bubbles.hpp"
#include "pmc/geometry.hpp"
#include "pmc/util.hpp"

using namespace pmc;

TEST_CASE("boundary values in closed form") {
  // lambda = 1 is the constant
  for (double r : {0.0, 0.7, 2.2, M_PI})
    CHECK(bubble_boundary({1.0, Pole::South, 5}, r) == doctest::Approx(1.0));

  // pole and antipode values lambda^{-(n-2)/2}, lambda^{(n-2)/2}
  Bubble b{0.25, Pole::South, 4};
  CHECK(bubble_boundary(b, 0.0) == doctest::Approx(4.0));
  CHECK(bubble_boundary(b, M_PI) == doctest::Approx(0.25));

  // hand value: n=3, lambda=0.5, r=pi/2 -> sqrt(0.5/0.625) = sqrt(0.8)
  CHECK(bubble_boundary({0.5, Pole::South, 3}, M_PI / 2) ==
        doctest::Approx(std::sqrt(0.8)));

  // north bubble mirrors
  CHECK(bubble_boundary({0.25, Pole::North, 4}, M_PI) == doctest::Approx(4.0));
}

TEST_CASE("interior extension: constant case and boundary consistency") {
  CHECK(bubble_interior({1.0, Pole::South, 3}, {0.2, 0.1}, 0.3) ==
        doctest::Approx(1.0));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.05, M_PI - 0.05);
  Bubble b{0.3, Pole::South, 4};
  for (int i = 0; i < 50; ++i) {
    double r = unif(rng);
    BallPoint z = boundary_point(r, 4);
    CHECK(bubble_interior(b, z.y, z.s) ==
          doctest::Approx(bubble_boundary(b, r)).epsilon(1e-10));
  }
  Bubble bn{0.3, Pole::North, 4};
  for (int i = 0; i < 10; ++i) {
    double r = unif(rng);
    BallPoint z = boundary_point(r, 4);
    CHECK(bubble_interior(bn, z.y, z.s) ==
          doctest::Approx(bubble_boundary(bn, r)).epsilon(1e-10));
  }
}

TEST_CASE("interior extension is harmonic (finite-difference laplacian)") {
  Bubble b{0.4, Pole::South, 3};
  const double h = 1e-3;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-0.4, 0.4);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> y = {unif(rng), unif(rng)};
    double s = unif(rng);
    auto f = [&](double dy0, double dy1, double ds) {
      return bubble_interior(b, {y[0] + dy0, y[1] + dy1}, s + ds);
    };
    double lap = (f(h, 0, 0) + f(-h, 0, 0) + f(0, h, 0) + f(0, -h, 0) +
                  f(0, 0, h) + f(0, 0, -h) - 6.0 * f(0, 0, 0)) /
                 (h * h);
    CHECK(std::abs(lap) < 5e-4 * std::abs(f(0, 0, 0)));
  }
}

TEST_CASE("normal derivative against a radial finite difference") {
  for (double lam : {0.2, 0.7}) {
    for (Pole pole : {Pole::South, Pole::North}) {
      Bubble b{lam, pole, 4};
      const double h = 1e-6;
      for (double r : {0.4, 1.3, 2.6}) {
        BallPoint z = boundary_point(r, 4);
        auto at = [&](double scale) {
          std::vector<double> ys(z.y.size());
          for (std::size_t k = 0; k < ys.size(); ++k) ys[k] = scale * z.y[k];
          return bubble_interior(b, ys, scale * z.s);
        };
        double fd = (at(1.0 + h) - at(1.0 - h)) / (2.0 * h);
        CHECK(bubble_normal_derivative(b, r) ==
              doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
  CHECK(bubble_normal_derivative({1.0, Pole::South, 3}, 0.7) == 0.0);
}

TEST_CASE("family membership: residual vanishes at the critical exponent") {
  for (int n : {3, 4, 5}) {
    RadialGrid g = make_grid(n, 96);
    GridFn ones(g.size(), 1.0);
    const double tau = critical_exponent(n);
    for (double lam : {0.01, 0.05, 0.1, 0.3, 0.5, 0.9, 1.0}) {
      GridFn r = bubble_residual({lam, Pole::South, n}, ones, tau, 1.0, g);
      CHECK(max_abs(r) < 1e-8);
    }
    // subcritical exponent leaves a genuine residual
    GridFn rs = bubble_residual({0.5, Pole::South, n}, ones, 0.9 * tau, 1.0, g);
    CHECK(max_abs(rs) > 1e-3);
  }
}

TEST_CASE("substituted grid: identity at lambda 1, exact normalization") {
  RadialGrid g = make_grid(4, 96);
  RadialGrid s1 = substituted_grid({1.0, Pole::South, 4}, g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(s1.r[j] == g.r[j]);
    CHECK(s1.w[j] == g.w[j]);
  }
  const double tau = critical_exponent(4);
  for (Pole pole : {Pole::South, Pole::North}) {
    for (double lam : {0.01, 0.3}) {
      Bubble b{lam, pole, 4};
      double j1 = bubble_j_functional(b, [](double) { return 1.0; }, tau, g);
      CHECK(j1 == doctest::Approx(g.s_nm1).epsilon(1e-10));
      RadialGrid sub = substituted_grid(b, g);
      for (double r : sub.r) {
        CHECK(r > 0.0);
        CHECK(r < M_PI);
      }
    }
  }
}

TEST_CASE("bubble energies across the family (normalization identity)") {
  for (int n : {3, 4, 5}) {
    RadialGrid g = make_grid(n, 96);
    const double gs = gamma_n(n) * g.s_nm1;
    for (double lam : {0.01, 0.05, 0.1, 0.3, 0.5, 0.9, 1.0}) {
      double e = bubble_energy({lam, Pole::South, n}, g);
      CHECK(std::abs(e - gs) / gs < 1e-8);
    }
  }
  // n=3, lambda=0.5 equals E(1) = 2 pi (spec of the target value)
  RadialGrid g3 = make_grid(3, 96);
  CHECK(bubble_energy({0.5, Pole::South, 3}, g3) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("bubble energy agrees with the spectral route at moderate scale") {
  RadialGrid g = make_grid(4, 256);
  ZonalBasis basis = make_basis(g, 128);
  Bubble b{0.5, Pole::South, 4};
  double e_spec = energy(bubble_values(b, g), g, basis);
  CHECK(e_spec == doctest::Approx(bubble_energy(b, g)).epsilon(1e-10));
}

TEST_CASE("doubling the grid leaves the substituted energy unchanged") {
  RadialGrid g1 = make_grid(4, 128), g2 = make_grid(4, 256);
  Bubble b{0.1, Pole::South, 4};
  CHECK(std::abs(bubble_energy(b, g1) - bubble_energy(b, g2)) < 1e-9);
}

TEST_CASE("mass center of the family") {
  RadialGrid g = make_grid(4, 96);
  CHECK(bubble_mass_center({1.0, Pole::South, 4}, g) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // quadratic smallness toward the pole
  double q1 = bubble_mass_center({0.05, Pole::South, 4}, g);
  CHECK(q1 < 0.02);
  // bounded ratio over a scale range
  for (double lam : {0.01, 0.05, 0.1, 0.3, 0.5}) {
    double q = bubble_mass_center({lam, Pole::South, 4}, g);
    CHECK(q / (lam * lam) < 10.0);
    CHECK(q / (lam * lam) > 1.0);
  }
  // log-log slope 2 within 5 percent at n = 5
  RadialGrid g5 = make_grid(5, 96);
  std::vector<double> lx, ly;
  for (double lam : logspace(0.01, 0.1, 7)) {
    lx.push_back(std::log(lam));
    ly.push_back(std::log(bubble_mass_center({lam, Pole::South, 5}, g5)));
  }
  LineFit f = fit_line(lx, ly);
  CHECK(std::abs(f.slope - 2.0) < 0.1);
}

TEST_CASE("conformal reparametrization carries the constant to the family") {
  RadialGrid g = make_grid(4, 192);
  ZonalBasis basis = make_basis(g, 96);
  GridFn ones(g.size(), 1.0);
  GridFn tb = t_phi(ones, 1.0 / 0.4, g, basis);  // beta = 1/lambda, south
  GridFn ub = bubble_values({0.4, Pole::South, 4}, g);
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(tb[j] == doctest::Approx(ub[j]).epsilon(1e-9));

  GridFn tn = t_phi(ones, 0.4, g, basis);  // beta < 1 gives the north bubble
  GridFn un = bubble_values({0.4, Pole::North, 4}, g);
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(tn[j] == doctest::Approx(un[j]).epsilon(1e-9));
}

TEST_CASE("reparametrization invariances and the group property") {
  RadialGrid g = make_grid(4, 192);
  ZonalBasis basis = make_basis(g, 96);
  std::mt19937 rng(23);
  std::normal_distribution<double> d(0.0, 1.0);
  Spectrum a(basis.kmax + 1, 0.0);
  for (int k = 0; k < 16; ++k) a[k] = d(rng) / (1.0 + k);
  GridFn v = synthesize(a, basis);
  for (auto& x : v) x += 3.0;

  const double beta = 1.7;
  GridFn tv = t_phi(v, beta, g, basis);
  CHECK(energy(tv, g, basis) ==
        doctest::Approx(energy(v, g, basis)).epsilon(1e-8));

  const double tau = critical_exponent(4);
  GridFn ones(g.size(), 1.0);
  CHECK(j_functional(tv, ones, tau, g) ==
        doctest::Approx(j_functional(v, ones, tau, g)).epsilon(1e-8));

  GridFn back = t_phi(tv, 1.0 / beta, g, basis);
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(std::abs(back[j] - v[j]) < 1e-8);

  GridFn id = t_phi(v, 1.0, g, basis);
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(id[j] == doctest::Approx(v[j]).epsilon(1e-11));
}

TEST_CASE("sigma decomposition recovers an exact family member") {
  RadialGrid g = make_grid(4, 192);
  ZonalBasis basis = make_basis(g, 96);
  GridFn u = bubble_values({0.4, Pole::South, 4}, g);
  SigmaReport rep = sigma_decompose(u, Pole::South, g, basis);
  CHECK(rep.converged);
  CHECK(rep.t0 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.lambda_star == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(rep.rho_v < 1e-5);
  CHECK(rep.inside_sigma);
}

TEST_CASE("sigma decomposition of a constructed perturbation") {
  RadialGrid g = make_grid(4, 192);
  ZonalBasis basis = make_basis(g, 96);
  const double gam = basis.gamma();
  const double gs = gam * g.s_nm1;

  GridFn ub = bubble_values({0.4, Pole::South, 4}, g);
  Spectrum aub = analyze(ub, g, basis);
  Spectrum pert(basis.kmax + 1, 0.0);
  pert[5] = 1.0;
  // orthogonalize against the bubble so the planted residual is clean
  double c = inner_e(pert, aub, gam) / inner_e(aub, aub, gam);
  for (std::size_t k = 0; k < pert.size(); ++k) pert[k] -= c * aub[k];
  double np = std::sqrt(inner_e(pert, pert, gam));
  for (auto& x : pert) x /= np;

  const double rho = 0.08 * std::sqrt(gs);
  double t0 = std::sqrt(1.0 - rho * rho / gs);
  GridFn pv = synthesize(pert, basis);
  GridFn u(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) u[j] = t0 * ub[j] + rho * pv[j];
  CHECK(energy(u, g, basis) == doctest::Approx(gs).epsilon(1e-9));

  SigmaReport rep = sigma_decompose(u, Pole::South, g, basis);
  CHECK(rep.lambda_star == doctest::Approx(0.4).epsilon(5e-3));
  CHECK(rep.t0 == doctest::Approx(t0).epsilon(1e-4));
  CHECK(rep.rho_v == doctest::Approx(rho).epsilon(1e-3));

  // orthogonality of the residual, spectral route
  Spectrum av = analyze(rep.v, g, basis);
  Spectrum ab = analyze(bubble_values({rep.lambda_star, Pole::South, 4}, g), g,
                        basis);
  CHECK(std::abs(inner_e(av, ab, gam)) < 1e-8);

  // boundary pairing with u^tau, plain quadrature route
  CHECK(std::abs(critical_secondary_check(rep.v, rep.lambda_star, Pole::South,
                                          g)) < 1e-7);

  // reparametrized pairings vanish at the optimum
  auto [p1, p2] =
      orthogonality_check(rep.v, rep.lambda_star, Pole::South, g, basis);
  CHECK(std::abs(p1) < 1e-6);
  CHECK(std::abs(p2) < 1e-6);
}

TEST_CASE("secondary check vanishes for trivial inputs") {
  RadialGrid g = make_grid(4, 96);
  ZonalBasis basis = make_basis(g, 48);
  GridFn zero(g.size(), 0.0);
  CHECK(critical_secondary_check(zero, 0.3, Pole::South, g) == 0.0);
  // at lambda = 1 a pure degree-1 mode integrates to zero against u^tau = 1
  Spectrum a(basis.kmax + 1, 0.0);
  a[1] = 1.0;
  GridFn v = synthesize(a, basis);
  CHECK(std::abs(critical_secondary_check(v, 1.0, Pole::South, g)) < 1e-12);
}

TEST_CASE("constant residual is a negative control for the pairings") {
  RadialGrid g = make_grid(4, 96);
  ZonalBasis basis = make_basis(g, 48);
  GridFn vc(g.size(), 0.1);
  auto [p1, p2] = orthogonality_check(vc, 0.4, Pole::South, g, basis);
  CHECK(std::abs(p1) > 1e-3);
}

TEST_CASE("north-pole decomposition mirrors the southern one") {
  RadialGrid g = make_grid(4, 192);
  ZonalBasis basis = make_basis(g, 96);
  GridFn u = bubble_values({0.35, Pole::North, 4}, g);
  SigmaReport rep = sigma_decompose(u, Pole::North, g, basis);
  CHECK(rep.lambda_star == doctest::Approx(0.35).epsilon(1e-6));
  CHECK(rep.q_dist < 0.3);
  CHECK(rep.inside_sigma);
}
