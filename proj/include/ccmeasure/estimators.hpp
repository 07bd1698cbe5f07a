#pragma once

#include <vector>

#include "ccmeasure/curves.hpp"
#include "ccmeasure/spaces.hpp"

namespace ccm {

// Geometric steps s0, s0*ratio, ..., s0*ratio^(count-1).
struct ScaleLadder {
  double s0 = 0.0;  // 0 selects 0.1 * (b - a)
  double ratio = 0.5;
  int count = 12;

  ScaleLadder resolved(Interval domain) const;
  void validate() const;
};

// How the ladder ratios behave as s shrinks.
enum class LadderTrend { Finite, Vanishing, Divergent, Erratic };

const char* to_string(LadderTrend trend);

struct LadderEntry {
  double s = 0.0;      // signed step
  double ratio = 0.0;  // d(g(t+s), g(t)) / |s|^(1/k)
  double gap = 0.0;    // engine gap carried into the ratio
};

struct DerivativeEstimate {
  double t = 0.0;
  double k = 1.0;
  double value = 0.0;  // estimated meas^k_t; 0 when vanishing, +inf when divergent
  bool converged = false;
  LadderTrend trend = LadderTrend::Erratic;
  double spread = 0.0;  // of the last three level ratios, in value units
  double gap = 0.0;     // distance-engine gap carried into value
  double slope = 0.0;   // log-log slope of level ratio against s
  std::vector<LadderEntry> ladder;
};

// Ladder estimate of the metric derivative of degree k at t. Two-sided in
// the interior, one-sided where a side leaves the domain. The last three
// level ratios (each the mean over available sides) decide convergence:
// agreement within rel_tol gives a finite value. Otherwise the log-log slope
// of the ratio against s separates a power-law decay (vanishing, value 0,
// still converged) from growth (divergent) and noise (erratic).
DerivativeEstimate meas_k_estimate(const MetricSpaceModel& space, const ParametricCurve& curve, double t, double k,
                                   ScaleLadder ladder = {}, double rel_tol = 1e-2);

struct DegreeEstimate {
  double t = 0.0;
  double k_hat = 0.0;  // +inf when every ladder distance vanishes
  double fit_residual = 0.0;
  double gap = 0.0;  // largest relative engine gap over the ladder
};

// k_hat = 1 / slope of log d(g(t+s), g(t)) against log |s|.
DegreeEstimate degree_estimate(const MetricSpaceModel& space, const ParametricCurve& curve, double t,
                               ScaleLadder ladder = {});

struct Mc1kReport {
  bool passed = false;
  double k = 1.0;
  double rel_tol = 0.0;
  std::vector<DerivativeEstimate> profile;
  std::vector<double> failing_times;
  double max_jump = 0.0;  // largest relative change between neighbours
};

std::vector<double> uniform_grid(Interval domain, std::size_t points);

// Estimates meas^k on the grid; passes when every estimate converged and
// neighbouring values differ by at most rel_tol (relative) plus their gaps
// and spreads.
Mc1kReport mc1k_check(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                      const std::vector<double>& grid, double rel_tol = 1e-2, ScaleLadder ladder = {});

// d(0, x)^k where x keeps the weight-k components of the velocity in the
// left-invariant frame. +inf when a component of weight above k is nonzero.
DistanceResult carnot_analytic_meas(const MetricSpaceModel& space, const ParametricCurve& curve, double t, double k);

// Curve precomposed with the inverse of t -> integral of meas^k from a; the
// new domain is [0, Length_k]. The grid must start at a and end at b.
ParametricCurve reparam_by_k_length(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                                    const std::vector<double>& grid, double rel_tol = 1e-2);

}  // namespace ccm
