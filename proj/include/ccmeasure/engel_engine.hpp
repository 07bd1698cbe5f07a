#pragma once

#include <array>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "ccmeasure/spaces.hpp"

namespace ccm::detail {

// Distance from the Engel origin, with two layers in front of the direct
// transcription solver:
//  * points of the abelian z-w plane are read from a lazily built table over
//    the unit box {max(|z|^(1/2), |w|^(1/3)) = 1};
//  * other points are normalised by dilation, reduced by the symmetries
//    (x,y,z,w) -> (x,-y,-z,-w), (-x,y,-z,w) and inversion, and cached by the
//    normalised point rounded to 1e-6.
class EngelEngine {
 public:
  explicit EngelEngine(SolverConfig cfg);

  DistanceResult norm(const Point& v) const;

  // Plane distances d(0, (0,0,z,w)).
  DistanceResult plane_norm(double z, double w) const;

  // Approximate midpoint of a near-minimising path from 0 to v (from the
  // solver's best path; interpolated for plane points).
  Point midpoint(const Point& v) const;

  const SolverConfig& config() const noexcept { return cfg_; }
  std::size_t cache_size() const;
  double table_gap() const;

 private:
  struct Table {
    std::vector<double> edge_z;  // d(0,(0,0,1,s)), s in [0,1]
    std::vector<double> edge_w;  // d(0,(0,0,s,1)), s in [0,1]
    std::array<std::vector<double>, 4> mid_z;  // path midpoints along edge_z
    std::array<std::vector<double>, 4> mid_w;
    double solver_gap = 0.0;
    double interp_gap = 0.0;
  };
  using Key = std::array<long long, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  struct UnitSolve {
    DistanceResult result;
    Point mid{0.0, 0.0, 0.0, 0.0};
  };
  struct Canonical {
    Key key;
    double lambda;
    Point unit;
    bool inverted;
    int sym;
  };

  const Table& table() const;
  UnitSolve solve_unit(const Point& unit) const;
  Canonical canonicalize(const Point& v) const;
  UnitSolve cached_unit(const Canonical& c) const;

  SolverConfig cfg_;
  mutable std::once_flag table_once_;
  mutable Table table_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<Key, UnitSolve, KeyHash> cache_;
};

}  // namespace ccm::detail
