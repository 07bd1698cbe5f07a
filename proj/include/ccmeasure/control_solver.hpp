#pragma once

#include <vector>

#include "ccmeasure/point.hpp"
#include "ccmeasure/spaces.hpp"

namespace ccm {

// Control-affine horizontal systems starting at the origin:
//   Heisenberg: x' = u1, y' = u2, z' = (x u2 - y u1) / 2
//   Engel:      x' = u1, y' = u2, z' = x u2, w' = (x^2 / 2) u2
enum class HorizontalSystem { Heisenberg, Engel };

// Endpoint of the trajectory driven by piecewise-constant controls over unit
// time. `controls` holds (u1, u2) pairs, one per node; each segment is
// integrated in closed form.
Point integrate_controls(HorizontalSystem system, const std::vector<double>& controls);

// Length of the horizontal path generated by `controls`.
double control_length(const std::vector<double>& controls);

// Point of the path reached after the given fraction of its length.
Point control_path_point(HorizontalSystem system, const std::vector<double>& controls, double fraction);

struct ControlSolveResult {
  double length = 0.0;         // best length over restarts at the refined grid
  double coarse_length = 0.0;  // best length at cfg.nodes
  double restart_spread = 0.0;
  double refinement_delta = 0.0;
  double residual = 0.0;  // endpoint error of the reported path
  int iterations = 0;
  bool converged = false;
  std::vector<double> controls;
};

// Minimises the length of piecewise-constant horizontal controls from the
// origin to `target`: penalty continuation on the energy, then an exact
// feasibility projection so the reported length belongs to a path that
// reaches the target. Each restart starts from random smooth controls. The
// best coarse solution is then re-solved on a grid of 2 * cfg.nodes.
ControlSolveResult solve_min_length(HorizontalSystem system, const Point& target, const SolverConfig& cfg);

}  // namespace ccm
