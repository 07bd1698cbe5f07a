#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ccmeasure/errors.hpp"
#include "ccmeasure/measures.hpp"

using namespace ccm;

namespace {

const double kFourPi = 4.0 * std::numbers::pi;

MetricSpaceModel E1() { return MetricSpaceModel::euclidean(1); }
ParametricCurve unit_segment() { return ParametricCurve::euclidean_segment(Point{1.0}); }

}  // namespace

TEST(Length, Anchors) {
  const auto H = MetricSpaceModel::heisenberg();
  const auto v = ParametricCurve::heisenberg_vertical();
  const auto L = length_k(H, v, 2.0, uniform_grid(v.domain(), 17));
  EXPECT_NEAR(L.value, kFourPi, 1e-8);
  EXPECT_LT(L.error_estimate, 1e-8);
  const auto S = length_k(E1(), unit_segment(), 1.0, uniform_grid({0, 1}, 17));
  EXPECT_NEAR(S.value, 1.0, 1e-12);
  EXPECT_THROW(length_k(H, v, 1.5, uniform_grid(v.domain(), 5)), InputError);
}

TEST(Chain, UnitSegment) {
  const auto c = interpolation_complexity(E1(), unit_segment(), 0.3);
  EXPECT_EQ(c.count, 5u);
  EXPECT_TRUE(c.validate(E1(), unit_segment()));
  EXPECT_LE(c.max_step, 0.3 + 1e-12);
  EXPECT_EQ(interpolation_complexity_bruteforce(E1(), unit_segment(), 0.3, 1000, c.times), 5u);
}

TEST(Chain, CertificateRejectsTampering) {
  auto c = interpolation_complexity(E1(), unit_segment(), 0.3);
  c.times.erase(c.times.begin() + 1);
  c.points.erase(c.points.begin() + 1);
  c.count -= 1;
  EXPECT_FALSE(c.validate(E1(), unit_segment()));
}

// Property: greedy and DP counts differ by at most one, and both scale like
// length / eps.
TEST(Chain, GreedyAgainstDpOnRandomEpsilons) {
  const auto H = MetricSpaceModel::heisenberg();
  const auto v = ParametricCurve::heisenberg_vertical();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.15, 1.0);
  for (int i = 0; i < 8; ++i) {
    const double eps = u(rng);
    const auto g = interpolation_complexity(H, v, eps);
    EXPECT_TRUE(g.validate(H, v));
    const auto dp = interpolation_complexity_bruteforce(H, v, eps, 4000, g.times);
    ASSERT_TRUE(dp);
    EXPECT_LE(*dp, g.count);
    EXPECT_LE(g.count, *dp + 1);
  }
}

TEST(Entropy, UnitSegmentAndSandwich) {
  const auto e = metric_entropy(E1(), unit_segment(), 0.3);
  EXPECT_EQ(e.count, 2u);
  const auto H = MetricSpaceModel::heisenberg();
  const auto v = ParametricCurve::heisenberg_vertical();
  for (double eps : {0.8, 0.4, 0.2}) {
    const auto ent = metric_entropy(H, v, eps);
    const double scaled = eps * eps * static_cast<double>(ent.count);
    // One ball of slack on each side.
    EXPECT_GE(scaled + eps * eps, kFourPi / 4.0);
    EXPECT_LE(scaled - eps * eps, kFourPi / 2.0);
  }
}

TEST(Covers, UnitSegmentExact) {
  const auto rec = hausdorff_upper(E1(), unit_segment(), 1.0, 0.3);
  EXPECT_NEAR(rec.cost, 1.0, 1e-9);
  for (const auto& p : rec.pieces) EXPECT_LE(p.diameter, 0.3 + 1e-12);
}

// Property: H-cost <= S-cost <= 2^k H-cost on matched partitions.
TEST(Covers, MatchedOrdering) {
  const auto H = MetricSpaceModel::heisenberg();
  const std::vector<ParametricCurve> curves = {ParametricCurve::heisenberg_vertical(),
                                               ParametricCurve::heisenberg_segment(Point{1, 0, 1}),
                                               ParametricCurve::heisenberg_segment(Point{0.3, -0.5, 0.8})};
  for (const auto& c : curves) {
    for (double eps : {0.8, 0.4}) {
      const auto m = matched_covers(H, c, 2.0, eps);
      ASSERT_EQ(m.hausdorff.pieces.size(), m.spherical.pieces.size());
      const double tol = 1e-2 * m.hausdorff.cost + m.hausdorff.gap + m.spherical.gap;
      EXPECT_LE(m.hausdorff.cost, m.spherical.cost + tol);
      EXPECT_LE(m.spherical.cost, 4.0 * m.hausdorff.cost + tol);
    }
  }
}

// Property: the cover cost is bounded by the k-length plus the last-piece
// term, and splitting arcs only moves it toward that limit from below.
TEST(Covers, CostApproachesLengthFromBelow) {
  const auto H = MetricSpaceModel::heisenberg();
  const auto c = ParametricCurve::heisenberg_segment(Point{1, 0, 1});
  const double L = kFourPi;
  double prev = 0.0;
  for (double eps : {0.8, 0.4, 0.2, 0.1}) {
    const auto rec = hausdorff_upper(H, c, 2.0, eps);
    EXPECT_LE(rec.cost, L + eps * eps + rec.gap);
    EXPECT_GE(rec.cost, prev * 0.99);
    prev = rec.cost;
  }
  EXPECT_NEAR(prev, L, 0.05 * L);
}

TEST(Covers, NonInjectiveCurveStaysBelowLength) {
  const auto E = MetricSpaceModel::euclidean(1);
  const auto c = ParametricCurve::polyline({0, 0.5, 1}, {Point{0}, Point{1}, Point{0}},
                                           std::numeric_limits<double>::infinity());
  EXPECT_FALSE(looks_injective(E, c));
  EXPECT_THROW(verify_main_theorem(E, c, 1.0), InputError);
  const auto L = length_k(E, c, 1.0, {0, 0.125, 0.25, 0.375, 0.49, 0.51, 0.625, 0.75, 0.875, 1});
  EXPECT_NEAR(L.value, 2.0, 0.1);
  // The doubled-back arc is covered once: roughly half the length.
  EXPECT_LE(hausdorff_upper(E, c, 1.0, 0.1).cost, L.value - 0.5);
}

TEST(Preimage, SegmentBall) {
  const auto b = ball_preimage(E1(), unit_segment(), 0.5, 0.2);
  EXPECT_NEAR(b.interval.a, 0.3, 1e-9);
  EXPECT_NEAR(b.interval.b, 0.7, 1e-9);
  EXPECT_EQ(b.side, Side::Interior);
  const auto e = ball_preimage(E1(), unit_segment(), 0.0, 0.2);
  EXPECT_EQ(e.side, Side::LeftEndpoint);
  const auto ivs = preimage_intervals(E1(), unit_segment(), Point{0.5}, 0.2);
  ASSERT_EQ(ivs.size(), 1u);
  EXPECT_NEAR(ivs[0].a, 0.3, 1e-9);
}

TEST(Density, HeisenbergVertical) {
  const auto H = MetricSpaceModel::heisenberg();
  const auto v = ParametricCurve::heisenberg_vertical();
  const auto in = density_profile(H, v, 2.0, 0.5, {0.2, 0.1, 0.05});
  for (double r : in.ratios) EXPECT_NEAR(r, 1.0, 0.05);
  const auto end = density_profile(H, v, 2.0, 0.0, {0.2, 0.1, 0.05});
  EXPECT_EQ(end.side, Side::LeftEndpoint);
  for (double r : end.ratios) EXPECT_NEAR(r, 0.5, 0.05);
  EXPECT_STREQ(to_string(Side::RightEndpoint), "right_endpoint");
}

TEST(Holder, Bounds) {
  const auto hb = holder_bounds_estimate(E1(), unit_segment(), 1.0, 0.1);
  EXPECT_NEAR(hb.delta_minus, 1.0, 1e-9);
  EXPECT_NEAR(hb.delta_plus, 1.0, 1e-9);
  const auto H = MetricSpaceModel::heisenberg();
  const auto hv = holder_bounds_estimate(H, ParametricCurve::heisenberg_vertical(), 2.0, 0.1);
  EXPECT_NEAR(hv.delta_minus, 2.0 * std::sqrt(std::numbers::pi), 1e-6);
  EXPECT_NEAR(hv.delta_plus, 2.0 * std::sqrt(std::numbers::pi), 1e-6);
  const auto pc = holder_bounds_estimate(E1(), ParametricCurve::point_curve(Point{0.0}), 1.0, 0.1);
  EXPECT_TRUE(pc.degenerate);
}

TEST(Verify, EuclideanSegment) {
  VerifyConfig cfg;
  cfg.epsilons = {0.3, 0.15, 0.075};
  const auto rep = verify_main_theorem(E1(), unit_segment(), 1.0, cfg);
  EXPECT_TRUE(rep.verdict);
  EXPECT_NEAR(rep.length_k.value, 1.0, 1e-9);
  EXPECT_NEAR(rep.hausdorff_upper.value, 1.0, 1e-6);
  // eps * (number of chain points) overshoots by one step.
  EXPECT_NEAR(rep.complexity_extrapolation.value, 1.0, 2.0 * 0.075);
}
