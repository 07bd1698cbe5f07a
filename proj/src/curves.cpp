#include "ccmeasure/curves.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "ccmeasure/errors.hpp"

namespace ccm {

namespace {

struct LineData {
  Point origin;
  Point direction;
};

struct PolynomialData {
  std::vector<std::vector<double>> coeffs;
};

struct WeierstrassData {
  WeierstrassParams params;
  std::vector<double> phi;
};

struct PolylineData {
  std::vector<double> times;
  std::vector<Point> points;
  double modulus = 0.0;
};

struct ReparamData {
  std::shared_ptr<const ParametricCurve::Impl> base;
  std::vector<double> new_times;
  std::vector<double> old_times;
};

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

double horner_derivative(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * t + static_cast<double>(i) * c[i];
  return v;
}

// Index of the segment [x[i], x[i+1]] containing v (x sorted).
std::size_t segment_index(const std::vector<double>& x, double v) {
  auto it = std::upper_bound(x.begin(), x.end(), v);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(i, x.size() - 2);
}

double lerp_table(const std::vector<double>& x, const std::vector<double>& y, double v) {
  const std::size_t i = segment_index(x, v);
  const double w = x[i + 1] > x[i] ? (v - x[i]) / (x[i + 1] - x[i]) : 0.0;
  return y[i] + w * (y[i + 1] - y[i]);
}

}  // namespace

struct ParametricCurve::Impl {
  std::string name;
  Interval domain;
  std::size_t dimension = 0;
  std::variant<LineData, PolynomialData, WeierstrassData, PolylineData, ReparamData> data;

  Point eval(double t) const {
    return std::visit(
        [&](const auto& d) -> Point {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, LineData>) {
            Point p(dimension);
            for (std::size_t i = 0; i < dimension; ++i) p[i] = d.origin[i] + t * d.direction[i];
            return p;
          } else if constexpr (std::is_same_v<T, PolynomialData>) {
            Point p(dimension);
            for (std::size_t i = 0; i < dimension; ++i) p[i] = horner(d.coeffs[i], t);
            return p;
          } else if constexpr (std::is_same_v<T, WeierstrassData>) {
            return Point{0.0, 0.0, weierstrass_eval(d.params, t), horner(d.phi, t)};
          } else if constexpr (std::is_same_v<T, PolylineData>) {
            const std::size_t i = segment_index(d.times, t);
            const double w = (t - d.times[i]) / (d.times[i + 1] - d.times[i]);
            Point p(dimension);
            for (std::size_t j = 0; j < dimension; ++j) p[j] = d.points[i][j] + w * (d.points[i + 1][j] - d.points[i][j]);
            return p;
          } else {
            return d.base->eval(lerp_table(d.new_times, d.old_times, t));
          }
        },
        data);
  }

  std::optional<Point> derivative(double t) const {
    return std::visit(
        [&](const auto& d) -> std::optional<Point> {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, LineData>) {
            return d.direction;
          } else if constexpr (std::is_same_v<T, PolynomialData>) {
            Point p(dimension);
            for (std::size_t i = 0; i < dimension; ++i) p[i] = horner_derivative(d.coeffs[i], t);
            return p;
          } else if constexpr (std::is_same_v<T, ReparamData>) {
            const std::size_t i = segment_index(d.new_times, t);
            const double slope = (d.old_times[i + 1] - d.old_times[i]) / (d.new_times[i + 1] - d.new_times[i]);
            auto v = d.base->derivative(lerp_table(d.new_times, d.old_times, t));
            if (!v) return std::nullopt;
            for (std::size_t j = 0; j < dimension; ++j) (*v)[j] *= slope;
            return v;
          } else {
            return std::nullopt;
          }
        },
        data);
  }

  bool has_derivative() const {
    if (std::holds_alternative<LineData>(data) || std::holds_alternative<PolynomialData>(data)) return true;
    if (const auto* r = std::get_if<ReparamData>(&data)) return r->base->has_derivative();
    return false;
  }
};

ParametricCurve::ParametricCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

void check_domain(Interval d) {
  if (!(std::isfinite(d.a) && std::isfinite(d.b) && d.a < d.b)) {
    throw InputError("curve domain must be a finite interval [a,b] with a < b");
  }
}

}  // namespace

ParametricCurve ParametricCurve::line(std::string name, Point origin, Point direction, Interval domain) {
  check_domain(domain);
  if (origin.dim() != direction.dim()) throw InputError("line origin and direction differ in dimension");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->domain = domain;
  impl->dimension = direction.dim();
  impl->data = LineData{origin, direction};
  return ParametricCurve(std::move(impl));
}

ParametricCurve ParametricCurve::euclidean_segment(Point direction, Interval domain) {
  return line("euclidean_segment", Point::zero(direction.dim()), direction, domain);
}

ParametricCurve ParametricCurve::heisenberg_vertical(Interval domain) {
  return line("heisenberg_vertical", Point{0, 0, 0}, Point{0, 0, 1}, domain);
}

ParametricCurve ParametricCurve::heisenberg_segment(Point direction, Interval domain, Point origin) {
  if (direction.dim() != 3) throw InputError("heisenberg_segment needs a 3-dimensional direction");
  return line("heisenberg_segment", origin, direction, domain);
}

ParametricCurve ParametricCurve::engel_z_axis(Interval domain) {
  return line("engel_z_axis", Point{0, 0, 0, 0}, Point{0, 0, 1, 0}, domain);
}

ParametricCurve ParametricCurve::engel_w_axis(Interval domain) {
  return line("engel_w_axis", Point{0, 0, 0, 0}, Point{0, 0, 0, 1}, domain);
}

ParametricCurve ParametricCurve::engel_weierstrass(WeierstrassParams params, std::vector<double> phi_coeffs,
                                                   Interval domain) {
  check_domain(domain);
  params.validate();
  if (params.holder_exponent() <= 2.0 / 3.0) {
    throw InputError("engel_weierstrass needs a Hoelder exponent log(1/alpha)/log(beta) above 2/3");
  }
  if (phi_coeffs.empty()) phi_coeffs = {0.0, 1.0};
  auto impl = std::make_shared<Impl>();
  impl->name = "engel_weierstrass";
  impl->domain = domain;
  impl->dimension = 4;
  impl->data = WeierstrassData{params, std::move(phi_coeffs)};
  return ParametricCurve(std::move(impl));
}

ParametricCurve ParametricCurve::polynomial(std::vector<std::vector<double>> coeffs, Interval domain) {
  check_domain(domain);
  if (coeffs.empty() || coeffs.size() > Point::kMaxDim) throw InputError("polynomial curve needs 1..8 coordinates");
  for (auto& c : coeffs) {
    if (c.empty()) c.push_back(0.0);
  }
  auto impl = std::make_shared<Impl>();
  impl->name = "custom_coordinate_curve";
  impl->domain = domain;
  impl->dimension = coeffs.size();
  impl->data = PolynomialData{std::move(coeffs)};
  return ParametricCurve(std::move(impl));
}

ParametricCurve ParametricCurve::polyline(std::vector<double> times, std::vector<Point> points, double modulus_bound) {
  if (times.size() < 2 || times.size() != points.size()) {
    throw InputError("polyline needs at least two samples with matching times and points");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InputError("polyline sample times must be strictly increasing");
    if (points[i].dim() != points[0].dim()) throw InputError("polyline points differ in dimension");
  }
  if (!(modulus_bound > 0.0)) throw InputError("polyline modulus bound must be positive");
  auto impl = std::make_shared<Impl>();
  impl->name = "polyline";
  impl->domain = {times.front(), times.back()};
  impl->dimension = points[0].dim();
  impl->data = PolylineData{std::move(times), std::move(points), modulus_bound};
  return ParametricCurve(std::move(impl));
}

ParametricCurve ParametricCurve::point_curve(Point p, Interval domain) {
  return line("point", p, Point::zero(p.dim()), domain);
}

ParametricCurve ParametricCurve::reparameterized(std::vector<double> new_times, std::vector<double> old_times) const {
  if (new_times.size() < 2 || new_times.size() != old_times.size()) {
    throw InputError("reparameterization table needs matching sizes >= 2");
  }
  for (std::size_t i = 1; i < new_times.size(); ++i) {
    if (!(new_times[i] > new_times[i - 1]) || !(old_times[i] > old_times[i - 1])) {
      throw InputError("reparameterization must be strictly increasing");
    }
  }
  const double slack = 1e-12 * std::max(1.0, impl_->domain.length());
  if (old_times.front() < impl_->domain.a - slack || old_times.back() > impl_->domain.b + slack) {
    throw InputError("reparameterization leaves the curve domain");
  }
  auto impl = std::make_shared<Impl>();
  impl->name = impl_->name + "@reparam";
  impl->domain = {new_times.front(), new_times.back()};
  impl->dimension = impl_->dimension;
  impl->data = ReparamData{impl_, std::move(new_times), std::move(old_times)};
  return ParametricCurve(std::move(impl));
}

ParametricCurve ParametricCurve::restricted(Interval sub) const {
  check_domain(sub);
  if (sub.a < impl_->domain.a || sub.b > impl_->domain.b) throw InputError("restriction leaves the curve domain");
  return reparameterized({sub.a, sub.b}, {sub.a, sub.b});
}

const std::string& ParametricCurve::name() const noexcept { return impl_->name; }
Interval ParametricCurve::domain() const noexcept { return impl_->domain; }
std::size_t ParametricCurve::dimension() const noexcept { return impl_->dimension; }

Point ParametricCurve::eval(double t) const {
  const Interval d = impl_->domain;
  const double slack = 1e-12 * std::max(1.0, d.length());
  if (!(t >= d.a - slack && t <= d.b + slack)) {
    throw InputError("t = " + std::to_string(t) + " lies outside the curve domain [" + std::to_string(d.a) + ", " +
                     std::to_string(d.b) + "]");
  }
  return impl_->eval(std::clamp(t, d.a, d.b));
}

bool ParametricCurve::has_derivative() const noexcept { return impl_->has_derivative(); }

std::optional<Point> ParametricCurve::derivative(double t) const {
  const Interval d = impl_->domain;
  if (!d.contains(t)) throw InputError("derivative requested outside the curve domain");
  return impl_->derivative(t);
}

const std::vector<double>& ParametricCurve::sample_times() const noexcept {
  static const std::vector<double> empty;
  const auto* p = std::get_if<PolylineData>(&impl_->data);
  return p ? p->times : empty;
}

const std::vector<Point>& ParametricCurve::sample_points() const noexcept {
  static const std::vector<Point> empty;
  const auto* p = std::get_if<PolylineData>(&impl_->data);
  return p ? p->points : empty;
}

double ParametricCurve::modulus_bound() const noexcept {
  const auto* p = std::get_if<PolylineData>(&impl_->data);
  return p ? p->modulus : 0.0;
}

void check_polyline_modulus(const MetricSpaceModel& space, const ParametricCurve& curve) {
  const auto& pts = curve.sample_points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const DistanceResult d = distance(space, pts[i - 1], pts[i]);
    if (d.value - d.gap_estimate > curve.modulus_bound()) {
      throw InputError("polyline samples " + std::to_string(i - 1) + " and " + std::to_string(i) +
                       " are farther apart than the declared modulus bound");
    }
  }
}

}  // namespace ccm
