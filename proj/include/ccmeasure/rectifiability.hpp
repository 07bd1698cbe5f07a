#pragma once

#include <string>
#include <vector>

#include "ccmeasure/curves.hpp"
#include "ccmeasure/spaces.hpp"

namespace ccm {

struct RectifiablePiece {
  ParametricCurve curve;
  std::vector<Interval> subsets;  // empty: the whole domain
};

// Finite union of curves of dimension k, each restricted to parameter
// subsets with pairwise disjoint images.
struct RectifiableSet {
  double k = 1.0;
  std::vector<RectifiablePiece> pieces;

  // Subsets of piece i (its domain when none are given).
  std::vector<Interval> subsets_of(std::size_t i) const;
};

struct SetValidation {
  bool passed = false;
  std::vector<std::string> problems;
};

// mc1k_check on 16 grid points per piece and a collision scan between the
// interiors of distinct pieces.
SetValidation validate_set(const MetricSpaceModel& space, const RectifiableSet& set, double rel_tol = 1e-2);

// Sum of k-lengths over the subsets. Throws InputError when the collision
// scan finds two pieces sharing interior points.
double set_measure_k(const MetricSpaceModel& space, const RectifiableSet& set);

struct DensitySample {
  std::size_t piece = 0;
  double t = 0.0;
  Point point;
  std::vector<double> densities;  // H^k(S ∩ B(q,r)) / r^k per radius
  double lower = 0.0;              // over the two smallest radii
  double upper = 0.0;
  double gap = 0.0;
  bool ok = false;
  std::string error;  // set when the preimage computation failed
};

struct DensityCheckReport {
  double k = 1.0;
  std::vector<double> radii;
  double tol = 0.05;
  double lower_bound = 0.0;  // 2 (1 - tol)
  double upper_bound = 0.0;  // 2^k (1 + tol)
  std::vector<DensitySample> samples;
  bool verdict = false;
};

// Samples drawn uniformly from each piece's subsets with a 5% margin;
// H^k(S ∩ B(q,r)) is the sum over pieces of the k-length of the preimage of
// the ball. Verdict: every sample inside [2 (1 - tol), 2^k (1 + tol)].
DensityCheckReport density_bounds_check(const MetricSpaceModel& space, const RectifiableSet& set,
                                        std::size_t samples_per_piece, std::vector<double> radii,
                                        unsigned long long seed = 20240611, double tol = 0.05);

}  // namespace ccm
