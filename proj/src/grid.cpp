#include "pmc/grid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pmc {

double sphere_volume(int m) {
  if (m < 0) throw std::invalid_argument("sphere dimension must be >= 0");
  return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double sin_power_integral(int m) {
  if (m < 0) throw std::invalid_argument("power must be >= 0");
  return std::sqrt(M_PI) * std::tgamma(0.5 * (m + 1)) / std::tgamma(0.5 * m + 1.0);
}

double critical_exponent(int n) { return static_cast<double>(n) / (n - 2); }

double gamma_n(int n) { return 0.5 * (n - 2); }

RadialGrid make_grid(int n, int m) {
  if (n < 3) throw std::invalid_argument("dimension must be >= 3");
  if (m < 8) throw std::invalid_argument("node count must be >= 8");

  // Golub-Welsch for the weight (1-x^2)^mu, mu = (n-3)/2.
  const double mu = 0.5 * (n - 3);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int k = 1; k < m; ++k) {
    double b = k * (k + 2.0 * mu) /
               ((2.0 * k + 2.0 * mu + 1.0) * (2.0 * k + 2.0 * mu - 1.0));
    sub[k - 1] = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("quadrature eigensolve failed");

  const double mu0 = sin_power_integral(n - 2);

  RadialGrid g;
  g.n = n;
  g.s_nm2 = sphere_volume(n - 2);
  g.s_nm1 = sphere_volume(n - 1);
  g.r.resize(m);
  g.x.resize(m);
  g.w.resize(m);

  // eigenvalues ascending in x means descending in r; store r ascending
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return es.eigenvalues()[a] > es.eigenvalues()[b];
  });
  for (int j = 0; j < m; ++j) {
    int i = idx[j];
    double x = es.eigenvalues()[i];
    g.x[j] = x;
    g.r[j] = std::acos(std::clamp(x, -1.0, 1.0));
    double v0 = es.eigenvectors()(0, i);
    g.w[j] = mu0 * v0 * v0;
  }
  return g;
}

}  // namespace pmc
