#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmc/curvature.hpp"

using namespace pmc;

namespace {
CurvatureProfile analytic(std::function<double(double)> h,
                          std::function<double(double)> dh) {
  CurvatureProfile p;
  p.h = std::move(h);
  p.dh = std::move(dh);
  return p;
}
}  // namespace

TEST_CASE("sign condition: monotone on the positive set fails") {
  auto p = analytic([](double r) { return std::cos(r); },
                    [](double r) { return -std::sin(r); });
  KWReport kw = kazdan_warner_check(p);
  CHECK_FALSE(kw.holds);
  CHECK(kw.witness_up < 0);
  CHECK(kw.witness_down >= 0);
}

TEST_CASE("sign condition: constant fails") {
  auto p = builtin_profile("constant", {{"c", 2.0}});
  CHECK_FALSE(kazdan_warner_check(p).holds);
}

TEST_CASE("sign condition: two-bump succeeds with witnesses") {
  // h = 1 + 0.3 cos(2r): h' = -0.6 sin(2r), negative then positive, h > 0
  auto p = analytic([](double r) { return 1.0 + 0.3 * std::cos(2.0 * r); },
                    [](double r) { return -0.6 * std::sin(2.0 * r); });
  KWReport kw = kazdan_warner_check(p);
  CHECK(kw.holds);
  CHECK(p.h(kw.witness_up) > 0);
  CHECK(p.dh(kw.witness_up) > 0);
  CHECK(p.h(kw.witness_down) > 0);
  CHECK(p.dh(kw.witness_down) < 0);
  CHECK(kw.crossing == doctest::Approx(M_PI / 2).epsilon(1e-6));
}

TEST_CASE("sign condition is invariant under positive scaling") {
  auto base = builtin_profile("two_bump");
  auto scaled = analytic([&](double r) { return 5.0 * base.h(r); },
                         [&](double r) { return 5.0 * base.dh(r); });
  KWReport k1 = kazdan_warner_check(base);
  KWReport k2 = kazdan_warner_check(scaled);
  CHECK(k1.holds == k2.holds);
  CHECK(k1.crossing == doctest::Approx(k2.crossing).epsilon(1e-9));
}

TEST_CASE("flatness fit recovers a planted exponent") {
  auto p = analytic([](double r) { return 1.0 - std::pow(r, 1.5); },
                    [](double r) { return -1.5 * std::pow(r, 0.5); });
  FlatnessFit f = flatness_fit(p, 0.0, 4);
  CHECK(std::abs(f.alpha_hat - 1.5) < 0.05);
  CHECK(f.a_hat < 0);
  CHECK(f.admissible);  // 1 < 1.5 < 3
}

TEST_CASE("boundary exponent is excluded by the strict inequality") {
  auto p = analytic([](double r) { return 1.0 - r * r; },
                    [](double r) { return -2.0 * r; });
  FlatnessFit f = flatness_fit(p, 0.0, 3);
  CHECK(std::abs(f.alpha_hat - 2.0) < 0.02);
  CHECK_FALSE(f.admissible);  // requires 0 < alpha < 2 strictly
  // the same exponent is admissible one dimension up
  CHECK(flatness_fit(p, 0.0, 4).admissible);
}

TEST_CASE("higher-order remainder does not disturb the slope") {
  auto p = analytic(
      [](double r) { return 1.0 - std::pow(r, 1.5) + r * r; },
      [](double r) { return -1.5 * std::pow(r, 0.5) + 2.0 * r; });
  FlatnessFit f = flatness_fit(p, 0.0, 4);
  CHECK(std::abs(f.alpha_hat - 1.5) < 0.05);
}

TEST_CASE("planted exponents across dimensions") {
  for (int n : {3, 4, 5}) {
    double lo = n - 3 + 0.1, hi = n - 1 - 0.1;
    for (double alpha : {lo, 0.5 * (lo + hi), hi}) {
      auto p = analytic(
          [alpha](double r) { return 2.0 - 0.7 * std::pow(r, alpha); },
          [alpha](double r) {
            return r > 0 ? -0.7 * alpha * std::pow(r, alpha - 1.0) : 0.0;
          });
      FlatnessFit f = flatness_fit(p, 0.0, n);
      CHECK(std::abs(f.alpha_hat - alpha) < 0.05);
      CHECK(f.admissible);
    }
  }
}

TEST_CASE("degenerate fit is reported for a locally constant profile") {
  auto p = builtin_profile("constant");
  FlatnessFit f = flatness_fit(p, 0.0, 4);
  CHECK(f.degenerate);
}

TEST_CASE("interior fit requires a critical point") {
  auto p = analytic([](double r) { return std::cos(r); },
                    [](double r) { return -std::sin(r); });
  CHECK_THROWS_AS(flatness_fit(p, 1.0, 4), std::invalid_argument);
}

TEST_CASE("builtin two_bump matches its declared metadata") {
  auto p = builtin_profile("two_bump", {{"alpha", 1.5}, {"a", 0.5}});
  CHECK(p.h(0) == doctest::Approx(1.0));
  CHECK(p.h(M_PI) == doctest::Approx(1.0));
  CHECK(p.h(M_PI / 2) == doctest::Approx(0.5));
  CHECK(kazdan_warner_check(p).holds);
  for (const auto& cp : p.critical_points) {
    FlatnessFit f = flatness_fit(p, cp.r0, 4);
    CHECK(std::abs(f.alpha_hat - cp.alpha) < 0.05);
    CHECK(f.a_hat * cp.a > 0);
  }
}

TEST_CASE("builtin monotone is a negative control") {
  auto p = builtin_profile("monotone", {{"a", 0.4}});
  CHECK(p.h(0) == doctest::Approx(1.0));
  CHECK(p.h(M_PI) == doctest::Approx(0.2));
  CHECK_FALSE(kazdan_warner_check(p).holds);
}

TEST_CASE("unknown profile name is rejected") {
  CHECK_THROWS_AS(builtin_profile("nope"), std::invalid_argument);
}

TEST_CASE("critical point detection finds the equatorial dip") {
  auto p = builtin_profile("two_bump");
  auto r0s = detect_critical_points(p);
  REQUIRE(r0s.size() >= 3);
  bool found = false;
  for (double r0 : r0s)
    if (std::abs(r0 - M_PI / 2) < 1e-6) found = true;
  CHECK(found);
}

TEST_CASE("tabulated profile with spline interpolation") {
  std::vector<double> rs, hs;
  auto ref = builtin_profile("two_bump");
  for (int i = 0; i <= 200; ++i) {
    double r = M_PI * i / 200;
    rs.push_back(r);
    hs.push_back(ref.h(r));
  }
  auto p = profile_from_table(rs, hs);
  for (double r : {0.3, 1.1, 2.0, 2.9})
    CHECK(p.h(r) == doctest::Approx(ref.h(r)).epsilon(1e-6));
  CHECK(kazdan_warner_check(p).holds);
}
