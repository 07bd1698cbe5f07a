#include "ccmeasure/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccmeasure/control_solver.hpp"
#include "ccmeasure/engel_engine.hpp"
#include "ccmeasure/errors.hpp"

namespace ccm {

namespace {

void require_dim(const MetricSpaceModel& space, const Point& p, const char* what) {
  if (p.dim() != space.dimension()) {
    throw InputError(std::string(what) + ": point " + p.to_string() + " has dimension " + std::to_string(p.dim()) +
                     ", space " + space.name() + " expects " + std::to_string(space.dimension()));
  }
}

// phi - sin(phi), accurate for small phi.
double phi_minus_sin(double phi) {
  if (phi < 0.5) {
    const double p2 = phi * phi;
    // Taylor series to phi^13; the truncation error is below 1e-17 * phi^3.
    double term = phi * p2 / 6.0;
    double sum = 0.0;
    for (int k = 1; k <= 6; ++k) {
      sum += term;
      term *= -p2 / static_cast<double>((2 * k + 2) * (2 * k + 3));
    }
    return sum;
  }
  return phi - std::sin(phi);
}

// Ratio z / r^2 reached by the geodesic whose planar projection is a circular
// arc turning by phi. Increasing on [0, 2 pi), from 0 to +inf.
double area_ratio(double phi) {
  const double s = std::sin(0.5 * phi);
  return phi_minus_sin(phi) / (8.0 * s * s);
}

}  // namespace

void SolverConfig::validate() const {
  if (nodes < 10) throw InputError("solver nodes must be >= 10");
  if (restarts < 1) throw InputError("solver restarts must be positive");
  if (!(penalty_weight > 0.0)) throw InputError("solver penalty weight must be positive");
  if (!(tolerance > 0.0)) throw InputError("solver tolerance must be positive");
  if (max_iterations < 1) throw InputError("solver max_iterations must be positive");
  if (plane_table_nodes < 4 || plane_table_nodes % 2 != 0) {
    throw InputError("plane table nodes must be an even number >= 4");
  }
}

MetricSpaceModel MetricSpaceModel::euclidean(std::size_t dimension) {
  if (dimension == 0 || dimension > Point::kMaxDim) {
    throw InputError("euclidean dimension must be in [1, " + std::to_string(Point::kMaxDim) + "]");
  }
  MetricSpaceModel m;
  m.kind_ = SpaceKind::Euclidean;
  m.dimension_ = dimension;
  m.weights_.assign(dimension, 1);
  return m;
}

MetricSpaceModel MetricSpaceModel::heisenberg() {
  MetricSpaceModel m;
  m.kind_ = SpaceKind::Heisenberg;
  m.dimension_ = 3;
  m.weights_ = {1, 1, 2};
  m.carnot_ = CarnotStructure{3, m.weights_, GroupLaw::Heisenberg, "X1 = (1, 0, -y/2), X2 = (0, 1, x/2)"};
  return m;
}

MetricSpaceModel MetricSpaceModel::engel(SolverConfig cfg) {
  cfg.validate();
  MetricSpaceModel m;
  m.kind_ = SpaceKind::Engel;
  m.dimension_ = 4;
  m.weights_ = {1, 1, 2, 3};
  m.carnot_ = CarnotStructure{4, m.weights_, GroupLaw::Engel, "X1 = (1, 0, 0, 0), X2 = (0, 1, x, x^2/2)"};
  m.solver_cfg_ = cfg;
  m.engel_ = std::make_shared<detail::EngelEngine>(cfg);
  return m;
}

std::string MetricSpaceModel::name() const {
  switch (kind_) {
    case SpaceKind::Euclidean:
      return "euclidean:" + std::to_string(dimension_);
    case SpaceKind::Heisenberg:
      return "heisenberg";
    case SpaceKind::Engel:
      return "engel";
  }
  return "unknown";
}

double MetricSpaceModel::resolution_gap() const noexcept {
  switch (kind_) {
    case SpaceKind::Euclidean:
      return 1e-15;
    case SpaceKind::Heisenberg:
      return 1e-12;
    case SpaceKind::Engel:
      return solver_cfg_->tolerance;
  }
  return 0.0;
}

namespace {

// Turning angle of the planar projection of the geodesic from 0 to a point
// with horizontal radius r > 0 and |z| = az > 0.
double heisenberg_turn(double r, double az) {
  const double target = az / (r * r);
  double lo = 0.0;
  double hi = 2.0 * std::numbers::pi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (area_ratio(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double heisenberg_norm(double x, double y, double z) {
  const double r = std::hypot(x, y);
  const double az = std::abs(z);
  if (az == 0.0) return r;
  if (r == 0.0) return 2.0 * std::sqrt(std::numbers::pi * az);
  const double phi = heisenberg_turn(r, az);
  if (phi <= std::numbers::pi) {
    const double half = 0.5 * phi;
    return half < 1e-8 ? r * (1.0 + half * half / 6.0) : r * half / std::sin(half);
  }
  return phi * std::sqrt(2.0 * az / phi_minus_sin(phi));
}

Point group_compose(const MetricSpaceModel& space, const Point& p, const Point& q) {
  require_dim(space, p, "group_compose");
  require_dim(space, q, "group_compose");
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      Point r(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) r[i] = p[i] + q[i];
      return r;
    }
    case SpaceKind::Heisenberg:
      return Point{p[0] + q[0], p[1] + q[1], p[2] + q[2] + 0.5 * (p[0] * q[1] - q[0] * p[1])};
    case SpaceKind::Engel:
      return Point{p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1],
                   p[3] + q[3] + p[0] * q[2] + 0.5 * p[0] * p[0] * q[1]};
  }
  return p;
}

Point group_inverse(const MetricSpaceModel& space, const Point& p) {
  require_dim(space, p, "group_inverse");
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::Heisenberg: {
      Point r(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) r[i] = -p[i];
      return r;
    }
    case SpaceKind::Engel: {
      const double x = p[0], y = p[1], z = p[2], w = p[3];
      return Point{-x, -y, x * y - z, -w + x * z - 0.5 * x * x * y};
    }
  }
  return p;
}

Point dilate(const MetricSpaceModel& space, double lambda, const Point& p) {
  require_dim(space, p, "dilate");
  if (!(lambda >= 0.0)) throw InputError("dilation factor must be nonnegative");
  Point r(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    double f = 1.0;
    for (int k = 0; k < space.weights()[i]; ++k) f *= lambda;
    r[i] = f * p[i];
  }
  return r;
}

HomogeneousNormalization normalize_homogeneous(const MetricSpaceModel& space, const Point& p) {
  require_dim(space, p, "normalize_homogeneous");
  if (p.is_zero()) throw InputError("cannot normalize the identity");
  double lambda = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    lambda = std::max(lambda, std::pow(std::abs(p[i]), 1.0 / space.weights()[i]));
  }
  Point unit(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) unit[i] = p[i] / std::pow(lambda, space.weights()[i]);
  return {lambda, unit};
}

Point left_translated_velocity(const MetricSpaceModel& space, const Point& p, const Point& v) {
  require_dim(space, p, "left_translated_velocity");
  require_dim(space, v, "left_translated_velocity");
  switch (space.kind()) {
    case SpaceKind::Euclidean:
      return v;
    case SpaceKind::Heisenberg:
      return Point{v[0], v[1], v[2] - 0.5 * (p[0] * v[1] - p[1] * v[0])};
    case SpaceKind::Engel:
      return Point{v[0], v[1], v[2] - p[0] * v[1], v[3] - p[0] * v[2] + 0.5 * p[0] * p[0] * v[1]};
  }
  return v;
}

DistanceResult distance(const MetricSpaceModel& space, const Point& p, const Point& q) {
  require_dim(space, p, "distance");
  require_dim(space, q, "distance");
  if (p == q) return DistanceResult{0.0, DistanceKind::Exact, 0.0, std::nullopt};
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.dim(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
      const double v = std::sqrt(s);
      return DistanceResult{v, DistanceKind::Exact, 1e-15 * v, std::nullopt};
    }
    case SpaceKind::Heisenberg: {
      const Point v = group_compose(space, group_inverse(space, q), p);
      const double d = heisenberg_norm(v[0], v[1], v[2]);
      return DistanceResult{d, DistanceKind::Exact, 1e-13 * d, std::nullopt};
    }
    case SpaceKind::Engel: {
      const Point v = group_compose(space, group_inverse(space, q), p);
      return space.engel_engine()->norm(v);
    }
  }
  return {};
}

Point geodesic_midpoint(const MetricSpaceModel& space, const Point& p, const Point& q) {
  require_dim(space, p, "geodesic_midpoint");
  require_dim(space, q, "geodesic_midpoint");
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      Point m(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) m[i] = 0.5 * (p[i] + q[i]);
      return m;
    }
    case SpaceKind::Heisenberg: {
      const Point v = group_compose(space, group_inverse(space, p), q);
      const double r = std::hypot(v[0], v[1]);
      const double az = std::abs(v[2]);
      Point m{0.5 * v[0], 0.5 * v[1], 0.0};
      if (az > 0.0) {
        const double s = v[2] > 0.0 ? 1.0 : -1.0;
        const double phi = r == 0.0 ? 2.0 * std::numbers::pi : heisenberg_turn(r, az);
        const double len = heisenberg_norm(v[0], v[1], v[2]);
        const double radius = len / phi;
        // Planar projection: circular arc turning by s * phi, initial tangent
        // rotated from the chord by -s * phi / 2.
        const double alpha = (r == 0.0 ? 0.0 : std::atan2(v[1], v[0])) - s * 0.5 * phi;
        const double end = alpha + s * 0.5 * phi;
        const double h = 0.5 * phi;
        m = Point{radius * s * (std::sin(end) - std::sin(alpha)), radius * s * (std::cos(alpha) - std::cos(end)),
                  s * radius * radius * phi_minus_sin(h) / 2.0};
      }
      return group_compose(space, p, m);
    }
    case SpaceKind::Engel: {
      const Point v = group_compose(space, group_inverse(space, p), q);
      return group_compose(space, p, space.engel_engine()->midpoint(v));
    }
  }
  return p;
}

DistanceResult engel_bvp_distance(const Point& p, const Point& q, const SolverConfig& cfg) {
  if (p.dim() != 4 || q.dim() != 4) throw InputError("engel_bvp_distance expects 4-dimensional points");
  cfg.validate();
  if (p == q) return DistanceResult{0.0, DistanceKind::Exact, 0.0, std::nullopt};
  const Point inv{-q[0], -q[1], q[0] * q[1] - q[2], -q[3] + q[0] * q[2] - 0.5 * q[0] * q[0] * q[1]};
  const Point v{inv[0] + p[0], inv[1] + p[1], inv[2] + p[2] + inv[0] * p[1],
                inv[3] + p[3] + inv[0] * p[2] + 0.5 * inv[0] * inv[0] * p[1]};
  const ControlSolveResult r = solve_min_length(HorizontalSystem::Engel, v, cfg);
  DistanceResult out;
  out.value = r.length;
  out.kind = DistanceKind::UpperBound;
  out.gap_estimate = r.restart_spread + r.refinement_delta;
  out.solver_stats = SolverStats{r.iterations, r.residual};
  return out;
}

}  // namespace ccm
