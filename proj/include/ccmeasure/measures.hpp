#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccmeasure/curves.hpp"
#include "ccmeasure/estimators.hpp"
#include "ccmeasure/spaces.hpp"

namespace ccm {

struct LengthResult {
  double k = 1.0;
  double value = 0.0;
  double error_estimate = 0.0;  // |T - T_half| from the every-other-point rule
  double gap = 0.0;             // trapezoid of the per-point engine gaps and spreads
  std::vector<DerivativeEstimate> profile;
};

// Composite trapezoid of the meas^k profile over the grid. Throws InputError
// listing the times where the estimate did not converge.
LengthResult length_k(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                      const std::vector<double>& grid, double rel_tol = 1e-2, ScaleLadder ladder = {});

struct ChainCertificate {
  double epsilon = 0.0;
  std::vector<double> times;
  std::vector<Point> points;
  std::size_t count = 0;  // number of points
  double max_step = 0.0;  // largest consecutive distance
  double gap = 0.0;       // largest engine gap over the steps

  // Consecutive distances within epsilon + gap and endpoints at g(a), g(b).
  bool validate(const MetricSpaceModel& space, const ParametricCurve& curve) const;
};

// Greedy farthest-step chain: from t_i the next time is the end of the
// connected parameter set on which the distance to g(t_i) stays <= epsilon.
ChainCertificate interpolation_complexity(const MetricSpaceModel& space, const ParametricCurve& curve, double epsilon);

// Fewest points of a forward chain through a uniform grid of grid_size times
// (plus extra_times). Breadth-first search; the forward scan from a node
// stops after 32 consecutive grid points farther than 4 * epsilon. nullopt
// when the grid admits no chain.
std::optional<std::size_t> interpolation_complexity_bruteforce(const MetricSpaceModel& space,
                                                               const ParametricCurve& curve, double epsilon,
                                                               std::size_t grid_size,
                                                               const std::vector<double>& extra_times = {});

struct EntropyResult {
  double epsilon = 0.0;
  std::size_t count = 0;
  std::vector<double> centers;
};

// Greedy epsilon-net along the parameter.
EntropyResult metric_entropy(const MetricSpaceModel& space, const ParametricCurve& curve, double epsilon);

struct CoverPiece {
  Interval arc;
  double diameter = 0.0;      // sampled estimate
  bool diameter_sampled = true;
  double radius = 0.0;        // ball radius (spherical covers)
  Point center;
};

struct CoverRecord {
  double epsilon = 0.0;
  double k = 1.0;
  std::vector<CoverPiece> pieces;
  double cost = 0.0;  // sum diam^k, or sum (2 r)^k for spherical covers
  double gap = 0.0;
};

struct MatchedCovers {
  CoverRecord hausdorff;
  CoverRecord spherical;
};

// Partition into arcs of sampled diameter <= epsilon. Diameters come from
// 17 Chebyshev samples per arc, doubled until the change is below 1%.
CoverRecord hausdorff_upper(const MetricSpaceModel& space, const ParametricCurve& curve, double k, double epsilon);

// Balls on the same partition: the centre is whichever of the parameter
// midpoint and the metric midpoint of the arc endpoints gives the smaller
// radius over the arc samples.
CoverRecord spherical_upper(const MetricSpaceModel& space, const ParametricCurve& curve, double k, double epsilon);

// Both covers from one partition.
MatchedCovers matched_covers(const MetricSpaceModel& space, const ParametricCurve& curve, double k, double epsilon);

enum class Side { Interior, LeftEndpoint, RightEndpoint };

const char* to_string(Side side);

struct BallPreimage {
  Interval interval;
  Side side = Side::Interior;
  bool monotone = true;  // false when the fine-scan fallback was used
  std::vector<std::string> warnings;
};

// {s : d(g(s), g(t)) <= r} as a connected interval around t, with a
// monotonicity scan inside and a locality scan over the rest of the domain.
BallPreimage ball_preimage(const MetricSpaceModel& space, const ParametricCurve& curve, double center_time, double r);

// {s : d(g(s), center) <= r} for an arbitrary centre, from a sampled scan
// refined by golden-section search at local minima and bisection at the
// crossings. Seeds are extra parameter times added to the scan.
std::vector<Interval> preimage_intervals(const MetricSpaceModel& space, const ParametricCurve& curve,
                                         const Point& center, double r, const std::vector<double>& seeds = {});

struct DensityProfile {
  double center_time = 0.0;
  Point center;
  double k = 1.0;
  std::vector<double> radii;
  std::vector<double> ratios;  // H^k(C ∩ B(q,r)) / (2 r^k)
  std::vector<double> gaps;
  Side side = Side::Interior;
  std::vector<std::string> warnings;
};

DensityProfile density_profile(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                               double center_time, std::vector<double> radii);

struct HolderBounds {
  double delta_minus = 0.0;
  double delta_plus = 0.0;
  bool degenerate = false;
  double gap = 0.0;
};

// Empirical inf and sup of d(g(t), g(t+s)) / |s|^(1/k) over 64 times and 16
// log-spaced steps in [window/1000, window], both signs.
HolderBounds holder_bounds_estimate(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                                    double window);

struct VerifyConfig {
  std::vector<double> epsilons;  // empty: five values 0.25 D, ..., D/64 with D = d(g(a), g(b))
  std::size_t length_grid = 33;
  double rel_tol = 0.05;
  double meas_rel_tol = 1e-2;
};

struct EpsilonRow {
  double epsilon = 0.0;
  double hausdorff_cost = 0.0;
  double spherical_cost = 0.0;
  std::size_t pieces = 0;
  std::size_t chain_count = 0;
  double complexity_scaled = 0.0;  // eps^k * count
  double gap = 0.0;
  bool ordering_ok = false;
};

struct Quantity {
  double value = 0.0;
  double tolerance = 0.0;
};

struct MeasureReport {
  double k = 1.0;
  Quantity length_k;
  Quantity hausdorff_upper;
  Quantity spherical_upper;
  Quantity complexity_extrapolation;
  std::vector<EpsilonRow> rows;
  double rel_tol = 0.0;
  double gap = 0.0;
  bool agreement_ok = false;
  bool ordering_ok = false;
  bool verdict = false;
};

// Rough injectivity test: 257 samples, pairs at least 8 steps apart must be
// separated by half the smallest adjacent distance.
bool looks_injective(const MetricSpaceModel& space, const ParametricCurve& curve);

// The four quantities of the main equality with a decreasing epsilon
// schedule. Throws InputError when the curve fails the injectivity test.
MeasureReport verify_main_theorem(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                                  const VerifyConfig& cfg = {});

}  // namespace ccm
