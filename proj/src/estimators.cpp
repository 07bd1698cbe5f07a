#include "ccmeasure/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ccmeasure/errors.hpp"
#include "ccmeasure/parallel.hpp"

namespace ccm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Level {
  double s = 0.0;
  double ratio = 0.0;
  double gap = 0.0;
};

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  if (rms) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (my + slope * (x[i] - mx));
      ss += r * r;
    }
    *rms = std::sqrt(ss / n);
  }
  return slope;
}

void check_time(const ParametricCurve& curve, double t) {
  if (!curve.domain().contains(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " lies outside the curve domain [" << curve.domain().a << ", " << curve.domain().b << "]";
    throw InputError(msg.str());
  }
}

}  // namespace

ScaleLadder ScaleLadder::resolved(Interval domain) const {
  ScaleLadder out = *this;
  if (out.s0 == 0.0) out.s0 = 0.1 * domain.length();
  out.validate();
  return out;
}

void ScaleLadder::validate() const {
  if (!(s0 > 0.0)) throw InputError("ladder s0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InputError("ladder ratio must lie in (0,1)");
  if (count < 3) throw InputError("ladder needs at least 3 levels");
}

const char* to_string(LadderTrend trend) {
  switch (trend) {
    case LadderTrend::Finite:
      return "finite";
    case LadderTrend::Vanishing:
      return "vanishing";
    case LadderTrend::Divergent:
      return "divergent";
    case LadderTrend::Erratic:
      return "erratic";
  }
  return "erratic";
}

DerivativeEstimate meas_k_estimate(const MetricSpaceModel& space, const ParametricCurve& curve, double t, double k,
                                   ScaleLadder ladder, double rel_tol) {
  if (!(k >= 1.0)) throw InputError("k must be >= 1");
  if (!(rel_tol > 0.0)) throw InputError("rel_tol must be positive");
  check_time(curve, t);
  const Interval dom = curve.domain();
  ladder = ladder.resolved(dom);

  DerivativeEstimate est;
  est.t = t;
  est.k = k;
  const Point center = curve.eval(t);
  std::vector<Level> levels;
  double s = ladder.s0;
  for (int j = 0; j < ladder.count; ++j, s *= ladder.ratio) {
    Level lv;
    lv.s = s;
    int sides = 0;
    for (double sign : {1.0, -1.0}) {
      const double tt = t + sign * s;
      if (tt < dom.a || tt > dom.b) continue;
      const DistanceResult d = distance(space, curve.eval(tt), center);
      // Below the engine's resolution the ratio carries no information.
      if (d.gap_estimate > 0.0 && d.value < 10.0 * d.gap_estimate) continue;
      // The step actually taken, which differs from s by rounding of t + s.
      const double scale = std::pow(std::abs(tt - t), 1.0 / k);
      const LadderEntry e{sign * s, d.value / scale, d.gap_estimate / scale};
      est.ladder.push_back(e);
      lv.ratio += e.ratio;
      lv.gap += e.gap;
      ++sides;
    }
    if (sides == 0) continue;
    lv.ratio /= sides;
    lv.gap /= sides;
    levels.push_back(lv);
  }
  if (levels.size() < 3) throw InputError("degenerate ladder: fewer than 3 usable scales above the engine resolution");

  const std::size_t m = levels.size();
  double rmin = kInf, rmax = 0.0, rsum = 0.0, gsum = 0.0;
  for (std::size_t j = m - 3; j < m; ++j) {
    rmin = std::min(rmin, levels[j].ratio);
    rmax = std::max(rmax, levels[j].ratio);
    rsum += levels[j].ratio;
    gsum += levels[j].gap;
  }
  const double rmean = rsum / 3.0;
  const double gmean = gsum / 3.0;
  est.spread = std::pow(rmax, k) - std::pow(rmin, k);
  est.gap = k * std::pow(rmean + gmean, k - 1.0) * gmean;

  std::vector<double> ls, lr;
  for (const auto& lv : levels) {
    if (lv.ratio > 0.0) {
      ls.push_back(std::log(lv.s));
      lr.push_back(std::log(lv.ratio));
    }
  }
  est.slope = ls.size() >= 2 ? fit_slope(ls, lr) : 0.0;

  if (rmax - rmin <= rel_tol * rmean + 2.0 * gmean) {
    est.trend = LadderTrend::Finite;
    est.converged = true;
    est.value = std::pow(rmean, k);
    return est;
  }
  const bool decreasing = levels[m - 1].ratio < levels[m - 2].ratio && levels[m - 2].ratio < levels[m - 3].ratio;
  const bool increasing = levels[m - 1].ratio > levels[m - 2].ratio && levels[m - 2].ratio > levels[m - 3].ratio;
  if (est.slope > 0.05 && decreasing) {
    est.trend = LadderTrend::Vanishing;
    est.converged = true;
    est.value = 0.0;
  } else if (est.slope < -0.05 && increasing) {
    est.trend = LadderTrend::Divergent;
    est.value = kInf;
  } else {
    est.trend = LadderTrend::Erratic;
    est.value = std::pow(rmean, k);
  }
  return est;
}

DegreeEstimate degree_estimate(const MetricSpaceModel& space, const ParametricCurve& curve, double t,
                               ScaleLadder ladder) {
  check_time(curve, t);
  const Interval dom = curve.domain();
  ladder = ladder.resolved(dom);
  DegreeEstimate out;
  out.t = t;
  const Point center = curve.eval(t);
  std::vector<double> ls, ld;
  double s = ladder.s0;
  for (int j = 0; j < ladder.count; ++j, s *= ladder.ratio) {
    for (double sign : {1.0, -1.0}) {
      const double tt = t + sign * s;
      if (tt < dom.a || tt > dom.b) continue;
      const DistanceResult d = distance(space, curve.eval(tt), center);
      if (!(d.value > 0.0)) continue;
      if (d.gap_estimate > 0.0 && d.value < 10.0 * d.gap_estimate) continue;
      ls.push_back(std::log(s));
      ld.push_back(std::log(d.value));
      out.gap = std::max(out.gap, d.gap_estimate / d.value);
    }
  }
  if (ls.size() < 2) {
    out.k_hat = kInf;
    return out;
  }
  const double slope = fit_slope(ls, ld, &out.fit_residual);
  out.k_hat = slope > 0.0 ? 1.0 / slope : kInf;
  return out;
}

std::vector<double> uniform_grid(Interval domain, std::size_t points) {
  if (points < 2) throw InputError("grid needs at least 2 points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = domain.a + domain.length() * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = domain.b;
  return g;
}

Mc1kReport mc1k_check(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                      const std::vector<double>& grid, double rel_tol, ScaleLadder ladder) {
  if (grid.empty()) throw InputError("mc1k_check needs a nonempty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw InputError("mc1k grid must be sorted");
  for (double t : grid) check_time(curve, t);
  Mc1kReport rep;
  rep.k = k;
  rep.rel_tol = rel_tol;
  rep.profile.resize(grid.size());
  parallel_for(grid.size(),
               [&](std::size_t i) { rep.profile[i] = meas_k_estimate(space, curve, grid[i], k, ladder, rel_tol); });
  std::vector<bool> bad(grid.size(), false);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!rep.profile[i].converged) bad[i] = true;
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto& a = rep.profile[i - 1];
    const auto& b = rep.profile[i];
    if (!a.converged || !b.converged) continue;
    const double diff = std::abs(a.value - b.value);
    const double scale = std::max(a.value, b.value);
    if (scale > 0.0) rep.max_jump = std::max(rep.max_jump, diff / scale);
    if (diff > rel_tol * scale + a.gap + b.gap + a.spread + b.spread) bad[i] = true;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (bad[i]) rep.failing_times.push_back(grid[i]);
  }
  rep.passed = rep.failing_times.empty();
  return rep;
}

DistanceResult carnot_analytic_meas(const MetricSpaceModel& space, const ParametricCurve& curve, double t, double k) {
  if (!(k >= 1.0) || k != std::round(k)) throw InputError("analytic meas^k needs a positive integer k");
  if (!curve.has_derivative()) throw InputError("curve '" + curve.name() + "' carries no derivative data");
  if (curve.dimension() != space.dimension()) throw InputError("curve and space dimensions differ");
  check_time(curve, t);
  const int kk = static_cast<int>(k);
  const Point v = left_translated_velocity(space, curve.eval(t), *curve.derivative(t));
  Point x = Point::zero(v.dim());
  double vmax = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) vmax = std::max(vmax, std::abs(v[i]));
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const int w = space.weights()[i];
    if (w > kk && std::abs(v[i]) > 1e-14 * std::max(1.0, vmax)) {
      return DistanceResult{kInf, DistanceKind::Exact, 0.0, std::nullopt};
    }
    if (w == kk) x[i] = v[i];
  }
  const DistanceResult d = distance(space, Point::zero(v.dim()), x);
  DistanceResult out = d;
  out.value = std::pow(d.value, k);
  out.gap_estimate = d.value > 0.0 ? std::pow(d.value + d.gap_estimate, k) - out.value : 0.0;
  return out;
}

ParametricCurve reparam_by_k_length(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                                    const std::vector<double>& grid, double rel_tol) {
  const Interval dom = curve.domain();
  if (grid.size() < 2 || grid.front() != dom.a || grid.back() != dom.b) {
    throw InputError("reparameterization grid must start at a and end at b");
  }
  const Mc1kReport rep = mc1k_check(space, curve, k, grid, rel_tol);
  std::vector<double> cum(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& e = rep.profile[i];
    if (!e.converged || !(e.value > 0.0) || !std::isfinite(e.value)) {
      std::ostringstream msg;
      msg << "meas^" << k << " is not a positive finite value at t = " << grid[i]
          << "; the k-length reparameterization is undefined";
      throw InputError(msg.str());
    }
    if (i > 0) cum[i] = cum[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (rep.profile[i - 1].value + e.value);
  }
  return curve.reparameterized(cum, grid);
}

}  // namespace ccm
