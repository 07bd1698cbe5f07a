#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccmeasure/point.hpp"

namespace ccm {

enum class SpaceKind { Euclidean, Heisenberg, Engel };

enum class GroupLaw { Heisenberg, Engel };

// Graded coordinates of a Carnot group: dilation by lambda scales coordinate i
// by lambda^weights[i].
struct CarnotStructure {
  std::size_t n = 0;
  std::vector<int> weights;
  GroupLaw law = GroupLaw::Heisenberg;
  std::string horizontal_frame;
};

// Direct-transcription settings for distances without a closed form.
struct SolverConfig {
  int nodes = 24;
  int restarts = 8;
  double penalty_weight = 10.0;
  double tolerance = 1e-10;
  int max_iterations = 400;
  std::uint64_t seed = 20240611;
  // Nodes per edge of the interpolation table used for the abelian z-w plane.
  int plane_table_nodes = 32;

  void validate() const;
};

enum class DistanceKind { Exact, UpperBound };

struct SolverStats {
  int iterations = 0;
  double residual = 0.0;
};

struct DistanceResult {
  double value = 0.0;
  DistanceKind kind = DistanceKind::Exact;
  // Absolute uncertainty. For UpperBound the true distance lies in
  // [value - gap_estimate, value].
  double gap_estimate = 0.0;
  std::optional<SolverStats> solver_stats;
};

namespace detail {
class EngelEngine;
}

// Immutable description of a metric space plus its distance engine. Copies
// share the Engel solve cache.
class MetricSpaceModel {
 public:
  static MetricSpaceModel euclidean(std::size_t dimension);
  static MetricSpaceModel heisenberg();
  static MetricSpaceModel engel(SolverConfig cfg = {});

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  const std::optional<CarnotStructure>& carnot() const noexcept { return carnot_; }
  const std::optional<SolverConfig>& engel_solver_cfg() const noexcept { return solver_cfg_; }
  bool is_carnot_group() const noexcept { return carnot_.has_value(); }
  std::string name() const;

  // Absolute uncertainty floor of the distance engine at unit scale.
  double resolution_gap() const noexcept;

  const detail::EngelEngine* engel_engine() const noexcept { return engel_.get(); }

 private:
  MetricSpaceModel() = default;

  SpaceKind kind_ = SpaceKind::Euclidean;
  std::size_t dimension_ = 0;
  std::vector<int> weights_;
  std::optional<CarnotStructure> carnot_;
  std::optional<SolverConfig> solver_cfg_;
  std::shared_ptr<const detail::EngelEngine> engel_;
};

DistanceResult distance(const MetricSpaceModel& space, const Point& p, const Point& q);

Point dilate(const MetricSpaceModel& space, double lambda, const Point& p);

// Euclidean spaces compose by vector addition.
Point group_compose(const MetricSpaceModel& space, const Point& p, const Point& q);
Point group_inverse(const MetricSpaceModel& space, const Point& p);

struct HomogeneousNormalization {
  double lambda = 0.0;
  Point unit;
};

// p = dilate(lambda, unit) with max_i |unit_i|^(1/w_i) = 1.
HomogeneousNormalization normalize_homogeneous(const MetricSpaceModel& space, const Point& p);

// Exact sub-Riemannian distance from the origin of the Heisenberg group.
double heisenberg_norm(double x, double y, double z);

// Midpoint of a (near-)minimising path from p to q: exact for Euclidean and
// Heisenberg, taken from the solver path for Engel.
Point geodesic_midpoint(const MetricSpaceModel& space, const Point& p, const Point& q);

// Upper bound on the Engel distance from a fresh direct-transcription solve
// (no cache, no interpolation table).
DistanceResult engel_bvp_distance(const Point& p, const Point& q, const SolverConfig& cfg);

// Derivative at s = 0 of p^{-1} * c(s) where c(0) = p and c'(0) = velocity.
// This is the velocity expressed in the left-invariant frame at p.
Point left_translated_velocity(const MetricSpaceModel& space, const Point& p, const Point& velocity);

}  // namespace ccm
