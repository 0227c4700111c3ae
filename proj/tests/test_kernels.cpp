#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pmc/kernels.hpp"

using namespace pmc;

namespace {
std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}
}  // namespace

TEST_CASE("gegenbauer recurrence matches legendre polynomials") {
  // lam = 1/2 gives the Legendre family
  std::vector<double> x = {-0.9, -0.3, 0.0, 0.4, 0.8};
  std::vector<double> out(4 * x.size());
  kernels::serial::gegenbauer_matrix(0.5, x.data(), x.size(), 3, out.data());
  for (std::size_t j = 0; j < x.size(); ++j) {
    double t = x[j];
    CHECK(out[0 * x.size() + j] == doctest::Approx(1.0));
    CHECK(out[1 * x.size() + j] == doctest::Approx(t));
    CHECK(out[2 * x.size() + j] == doctest::Approx(0.5 * (3 * t * t - 1)));
    CHECK(out[3 * x.size() + j] == doctest::Approx(0.5 * (5 * t * t * t - 3 * t)));
  }
}

TEST_CASE("gegenbauer recurrence matches chebyshev-U at lam = 1") {
  std::vector<double> x = {-0.7, 0.1, 0.6};
  std::vector<double> out(3 * x.size());
  kernels::serial::gegenbauer_matrix(1.0, x.data(), x.size(), 2, out.data());
  for (std::size_t j = 0; j < x.size(); ++j) {
    double th = std::acos(x[j]);
    CHECK(out[1 * x.size() + j] ==
          doctest::Approx(std::sin(2 * th) / std::sin(th)));
    CHECK(out[2 * x.size() + j] ==
          doctest::Approx(std::sin(3 * th) / std::sin(th)));
  }
}

TEST_CASE("serial and openmp kernels agree bitwise") {
  const std::size_t m = 257, k1 = 129;
  auto x = random_vec(m, 1);
  for (auto& v : x) v = std::tanh(v);  // into [-1, 1]
  std::vector<double> ys(k1 * m), yo(k1 * m);
  kernels::serial::gegenbauer_matrix(1.0, x.data(), m, k1 - 1, ys.data());
  kernels::omp::gegenbauer_matrix(1.0, x.data(), m, k1 - 1, yo.data());
  for (std::size_t i = 0; i < ys.size(); ++i) CHECK(ys[i] == yo[i]);

  auto a = random_vec(k1, 2);
  std::vector<double> yt(m * k1);
  for (std::size_t k = 0; k < k1; ++k)
    for (std::size_t j = 0; j < m; ++j) yt[j * k1 + k] = ys[k * m + j];
  std::vector<double> vs(m), vo(m);
  kernels::serial::synth_apply(yt.data(), m, k1, a.data(), vs.data());
  kernels::omp::synth_apply(yt.data(), m, k1, a.data(), vo.data());
  for (std::size_t i = 0; i < m; ++i) CHECK(vs[i] == vo[i]);

  auto wf = random_vec(m, 3);
  std::vector<double> cs(k1), co(k1);
  kernels::serial::analyze_apply(ys.data(), m, k1, wf.data(), cs.data());
  kernels::omp::analyze_apply(ys.data(), m, k1, wf.data(), co.data());
  for (std::size_t i = 0; i < k1; ++i) CHECK(cs[i] == co[i]);

  std::vector<double> ps(m), po(m);
  kernels::serial::pow_nonneg(wf.data(), m, 1.7, ps.data());
  kernels::omp::pow_nonneg(wf.data(), m, 1.7, po.data());
  for (std::size_t i = 0; i < m; ++i) CHECK(ps[i] == po[i]);
}

TEST_CASE("pow_nonneg clamps negatives to zero") {
  std::vector<double> u = {-2.0, 0.0, 3.0};
  std::vector<double> out(3);
  kernels::serial::pow_nonneg(u.data(), 3, 2.0, out.data());
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 9.0);
}
