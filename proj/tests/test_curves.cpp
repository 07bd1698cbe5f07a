#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ccmeasure/curves.hpp"
#include "ccmeasure/errors.hpp"

using namespace ccm;

TEST(Curves, BuiltinsEvaluate) {
  const auto v = ParametricCurve::heisenberg_vertical();
  EXPECT_EQ(v.dimension(), 3u);
  EXPECT_DOUBLE_EQ(v.eval(0.25)[2], 0.25);
  const auto w = ParametricCurve::engel_w_axis({-1, 1});
  EXPECT_DOUBLE_EQ(w.eval(-0.5)[3], -0.5);
  const auto s = ParametricCurve::euclidean_segment(Point{3, 4});
  EXPECT_DOUBLE_EQ(s.eval(1.0)[1], 4.0);
  EXPECT_TRUE(s.has_derivative());
}

TEST(Curves, DomainChecks) {
  const auto v = ParametricCurve::heisenberg_vertical();
  EXPECT_THROW(v.eval(1.5), InputError);
  EXPECT_THROW(v.eval(-0.1), InputError);
  EXPECT_NO_THROW(v.eval(1.0 + 1e-14));
  EXPECT_THROW(ParametricCurve::heisenberg_vertical({1, 1}), InputError);
  EXPECT_THROW(ParametricCurve::heisenberg_segment(Point{1, 0}), InputError);
}

TEST(Curves, PolynomialAndDerivative) {
  const auto c = ParametricCurve::polynomial({{1, 2}, {0, 0, 3}}, {0, 3});
  const Point p = c.eval(2.0);
  EXPECT_DOUBLE_EQ(p[0], 5.0);
  EXPECT_DOUBLE_EQ(p[1], 12.0);
  const auto dp = c.derivative(2.0);
  ASSERT_TRUE(dp);
  EXPECT_DOUBLE_EQ((*dp)[0], 2.0);
  EXPECT_DOUBLE_EQ((*dp)[1], 12.0);
}

TEST(Curves, PolylineInterpolatesAndValidates) {
  const auto c = ParametricCurve::polyline({0, 1, 3}, {Point{0}, Point{2}, Point{0}}, 5.0);
  EXPECT_DOUBLE_EQ(c.eval(0.5)[0], 1.0);
  EXPECT_DOUBLE_EQ(c.eval(2.0)[0], 1.0);
  EXPECT_FALSE(c.has_derivative());
  EXPECT_THROW(ParametricCurve::polyline({0, 0}, {Point{0}, Point{1}}, 1.0), InputError);
  EXPECT_THROW(ParametricCurve::polyline({0, 1}, {Point{0}, Point{1, 1}}, 1.0), InputError);
  EXPECT_THROW(ParametricCurve::polyline({0, 1}, {Point{0}, Point{1}}, 0.0), InputError);
}

TEST(Curves, PolylineModulusCheck) {
  const auto E = MetricSpaceModel::euclidean(1);
  const auto ok = ParametricCurve::polyline({0, 1}, {Point{0}, Point{1}}, 1.5);
  EXPECT_NO_THROW(check_polyline_modulus(E, ok));
  const auto bad = ParametricCurve::polyline({0, 1}, {Point{0}, Point{3}}, 1.5);
  EXPECT_THROW(check_polyline_modulus(E, bad), InputError);
}

TEST(Curves, RestrictAndReparameterize) {
  const auto s = ParametricCurve::euclidean_segment(Point{2.0});
  const auto r = s.restricted({0.25, 0.5});
  EXPECT_DOUBLE_EQ(r.domain().a, 0.25);
  EXPECT_DOUBLE_EQ(r.eval(0.5)[0], 1.0);
  EXPECT_THROW(s.restricted({0.5, 2.0}), InputError);
  const auto q = s.reparameterized({0, 2}, {0, 1});
  EXPECT_DOUBLE_EQ(q.domain().b, 2.0);
  EXPECT_DOUBLE_EQ(q.eval(1.0)[0], 1.0);
  ASSERT_TRUE(q.derivative(1.0));
  EXPECT_DOUBLE_EQ((*q.derivative(1.0))[0], 1.0);
  EXPECT_THROW(s.reparameterized({0, 1}, {0, 2}), InputError);
  EXPECT_THROW(s.reparameterized({1, 0}, {0, 1}), InputError);
}

TEST(Weierstrass, ParametersAndExponent) {
  WeierstrassParams p;
  EXPECT_NEAR(p.holder_exponent(), std::log(1 / 0.12) / std::log(10.0), 1e-15);
  EXPECT_GT(p.holder_exponent(), 2.0 / 3.0);
  EXPECT_NO_THROW(p.validate());
  EXPECT_THROW((WeierstrassParams{0.05, 10.0, 0}.validate()), InputError);  // alpha beta < 1
  EXPECT_THROW((WeierstrassParams{1.5, 10.0, 0}.validate()), InputError);
  EXPECT_THROW(ParametricCurve::engel_weierstrass({0.5, 3.0, 0}, {0, 1}), InputError);  // xi below 2/3
  EXPECT_GT(p.terms(), 0);
}

TEST(Weierstrass, TruncationTailBound) {
  WeierstrassParams coarse{0.12, 10.0, 4};
  WeierstrassParams fine{0.12, 10.0, 12};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    EXPECT_LE(std::abs(weierstrass_eval(coarse, t) - weierstrass_eval(fine, t)),
              weierstrass_tail_bound(coarse) + 1e-15);
  }
  EXPECT_DOUBLE_EQ(weierstrass_eval(fine, 0.0), 0.0);
}

TEST(Weierstrass, HolderConstantHolds) {
  WeierstrassParams p;
  const double xi = p.holder_exponent();
  const double C = weierstrass_holder_constant(p);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(0.0, 1.0), e(-12.0, 0.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = t(rng);
    const double h = std::pow(10.0, e(rng));
    const double diff = std::abs(weierstrass_eval(p, a + h) - weierstrass_eval(p, a));
    EXPECT_LE(diff, C * std::pow(h, xi) + 2 * weierstrass_tail_bound(p));
  }
}

TEST(Weierstrass, CurveIsPlanarInZW) {
  const auto c = ParametricCurve::engel_weierstrass({}, {0.0, 1.0});
  const Point p = c.eval(0.3);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_DOUBLE_EQ(p[2], weierstrass_eval({}, 0.3));
  EXPECT_DOUBLE_EQ(p[3], 0.3);
}
