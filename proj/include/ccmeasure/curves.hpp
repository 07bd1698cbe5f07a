#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccmeasure/point.hpp"
#include "ccmeasure/spaces.hpp"

namespace ccm {

struct Interval {
  double a = 0.0;
  double b = 1.0;

  double length() const noexcept { return b - a; }
  bool contains(double t) const noexcept { return t >= a && t <= b; }
};

// W(t) = sum_{n=0}^{N} alpha^n (cos(beta^n pi t) - 1).
struct WeierstrassParams {
  double alpha = 0.12;
  double beta = 10.0;
  int truncation = 0;  // 0 selects default_truncation(alpha)

  // log(1/alpha) / log(beta)
  double holder_exponent() const;
  // Throws unless 0 < alpha < 1, beta > 1, alpha * beta > 1.
  void validate() const;
  int terms() const;

  // Smallest N whose geometric tail 2 alpha^(N+1) / (1 - alpha) is below tol.
  static int default_truncation(double alpha, double tol = 1e-12);
};

double weierstrass_eval(const WeierstrassParams& params, double t);

// Bound on |W_N(t) - W(t)| from the geometric tail.
double weierstrass_tail_bound(const WeierstrassParams& params);

// Hoelder constant C with |W(t+h) - W(t)| <= C |h|^xi for all t, h, obtained
// by splitting the series where beta^n pi |h| crosses 2.
double weierstrass_holder_constant(const WeierstrassParams& params);

// A continuous map from a closed interval into a space of the given ambient
// dimension. Immutable and cheap to copy.
class ParametricCurve {
 public:
  // t -> origin + t * direction, in coordinates.
  static ParametricCurve line(std::string name, Point origin, Point direction, Interval domain);
  static ParametricCurve euclidean_segment(Point direction, Interval domain = {});
  static ParametricCurve heisenberg_vertical(Interval domain = {});
  static ParametricCurve heisenberg_segment(Point direction, Interval domain = {}, Point origin = Point{0, 0, 0});
  static ParametricCurve engel_z_axis(Interval domain = {});
  static ParametricCurve engel_w_axis(Interval domain = {});
  // t -> (0, 0, W(t), phi(t)) with phi given by polynomial coefficients
  // (constant term first).
  static ParametricCurve engel_weierstrass(WeierstrassParams params, std::vector<double> phi_coeffs,
                                           Interval domain = {});
  // Coordinate i is the polynomial with coefficients coeffs[i] (constant
  // term first).
  static ParametricCurve polynomial(std::vector<std::vector<double>> coeffs, Interval domain = {});
  // Piecewise-linear interpolation in coordinates. `modulus_bound` is the
  // declared bound on the distance between consecutive samples.
  static ParametricCurve polyline(std::vector<double> times, std::vector<Point> points, double modulus_bound);
  // Constant curve.
  static ParametricCurve point_curve(Point p, Interval domain = {});

  // Precomposition with the piecewise-linear map new_times[i] -> old_times[i].
  ParametricCurve reparameterized(std::vector<double> new_times, std::vector<double> old_times) const;
  // Same map on a sub-interval of the domain.
  ParametricCurve restricted(Interval sub) const;

  const std::string& name() const noexcept;
  Interval domain() const noexcept;
  std::size_t dimension() const noexcept;

  // Throws InputError when t lies outside the domain (beyond rounding slack).
  Point eval(double t) const;
  bool has_derivative() const noexcept;
  // Coordinate velocity; nullopt for curves without derivative data.
  std::optional<Point> derivative(double t) const;

  // Polyline data, empty for builtins.
  const std::vector<double>& sample_times() const noexcept;
  const std::vector<Point>& sample_points() const noexcept;
  double modulus_bound() const noexcept;

  struct Impl;

 private:
  explicit ParametricCurve(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Checks the declared modulus bound of a polyline against the metric.
void check_polyline_modulus(const MetricSpaceModel& space, const ParametricCurve& curve);

}  // namespace ccm
