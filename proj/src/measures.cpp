#include "ccmeasure/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ccmeasure/errors.hpp"
#include "ccmeasure/parallel.hpp"

namespace ccm {

namespace {

double param_tol(const ParametricCurve& curve) { return 1e-14 * std::max(1.0, curve.domain().length()); }

void require_epsilon(const MetricSpaceModel& space, double epsilon) {
  if (!(epsilon > 10.0 * space.resolution_gap())) {
    std::ostringstream msg;
    msg << "epsilon = " << epsilon << " must exceed 10x the distance-engine gap (" << space.resolution_gap() << ")";
    throw InputError(msg.str());
  }
}

void require_curve(const MetricSpaceModel& space, const ParametricCurve& curve) {
  if (curve.dimension() != space.dimension()) {
    throw InputError("curve '" + curve.name() + "' has dimension " + std::to_string(curve.dimension()) + ", space " +
                     space.name() + " expects " + std::to_string(space.dimension()));
  }
}

// Largest time in direction dir from t0 up to which d(p, g(t)) <= radius,
// by doubling from `hint` and bisecting to the parameter tolerance. `hint`
// is updated to the step taken.
double reach(const MetricSpaceModel& space, const ParametricCurve& curve, const Point& p, double t0, double dir,
             double radius, double& hint) {
  const Interval dom = curve.domain();
  const double end = dir > 0 ? dom.b : dom.a;
  if (t0 == end) return end;
  const double tol = param_tol(curve);
  auto ok = [&](double t) { return distance(space, p, curve.eval(t)).value <= radius; };
  double h = hint > 0.0 ? hint : dom.length() / 64.0;
  double good = t0;
  double bad = end;
  bool found_bad = false;
  while (true) {
    double cand = good + dir * h;
    if ((dir > 0 && cand >= end) || (dir < 0 && cand <= end)) cand = end;
    if (ok(cand)) {
      good = cand;
      if (good == end) break;
      h *= 2.0;
    } else {
      bad = cand;
      found_bad = true;
      break;
    }
  }
  if (found_bad) {
    while (std::abs(bad - good) > tol) {
      const double mid = 0.5 * (good + bad);
      if (mid == good || mid == bad) break;
      if (ok(mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
  }
  hint = std::abs(good - t0);
  return good;
}

struct ArcSamples {
  std::vector<double> times;
  std::vector<Point> points;
  double diameter = 0.0;
  double diameter_gap = 0.0;
};

// Chebyshev points of the second kind on [t0, t1], endpoints included.
std::vector<double> chebyshev_times(double t0, double t1, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = mid - half * std::cos(std::numbers::pi * j / (n - 1));
  out.front() = t0;
  out.back() = t1;
  return out;
}

ArcSamples sample_diameter(const MetricSpaceModel& space, const ParametricCurve& curve, double t0, double t1) {
  ArcSamples s;
  double previous = -1.0;
  for (int n = 17; n <= 1025; n = 2 * n - 1) {
    s.times = chebyshev_times(t0, t1, n);
    s.points.clear();
    for (double t : s.times) s.points.push_back(curve.eval(t));
    double diam = 0.0, gap = 0.0;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      for (std::size_t j = i + 1; j < s.points.size(); ++j) {
        const DistanceResult d = distance(space, s.points[i], s.points[j]);
        if (d.value > diam) {
          diam = d.value;
          gap = d.gap_estimate;
        }
      }
    }
    s.diameter = diam;
    s.diameter_gap = gap;
    if (previous >= 0.0 && std::abs(diam - previous) <= 0.01 * diam) break;
    previous = diam;
  }
  return s;
}

double power_gap(double value, double gap, double k) { return std::pow(value + gap, k) - std::pow(value, k); }

// Smallest value of f on [x0, x1] by golden-section search.
template <class F>
double golden_min(F&& f, double x0, double x1, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = x1 - g * (x1 - x0), b = x0 + g * (x1 - x0);
  double fa = f(a), fb = f(b);
  double best = std::min({f(x0), f(x1), fa, fb});
  for (int it = 0; it < 100 && x1 - x0 > tol; ++it) {
    if (fa < fb) {
      x1 = b;
      b = a;
      fb = fa;
      a = x1 - g * (x1 - x0);
      fa = f(a);
    } else {
      x0 = a;
      a = b;
      fa = fb;
      b = x0 + g * (x1 - x0);
      fb = f(b);
    }
    best = std::min({best, fa, fb});
  }
  return best;
}

// For curves that revisit their own image, a piece whose sampled image lies
// on the remaining pieces adds nothing to the cover. Pieces are dropped in
// order, each tested against the pieces still kept.
std::vector<bool> redundant_pieces(const MetricSpaceModel& space, const ParametricCurve& curve,
                                   const std::vector<CoverPiece>& pieces, double epsilon) {
  constexpr int kSamples = 33;
  const std::size_t n = pieces.size();
  std::vector<std::vector<double>> times(n);
  std::vector<std::vector<Point>> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < kSamples; ++j) {
      const double t = pieces[i].arc.a + pieces[i].arc.length() * j / (kSamples - 1.0);
      times[i].push_back(t);
      pts[i].push_back(curve.eval(t));
    }
  }
  const double accept = 1e-6 * epsilon + space.resolution_gap() * std::max(1.0, epsilon);
  std::vector<bool> dropped(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    bool covered = true;
    for (int j = 0; j < kSamples && covered; ++j) {
      const Point& x = pts[p][j];
      double best = std::numeric_limits<double>::infinity();
      std::size_t bq = n;
      int bj = 0;
      for (std::size_t q = 0; q < n; ++q) {
        if (q == p || dropped[q]) continue;
        for (int m = 0; m < kSamples; ++m) {
          const double d = distance(space, x, pts[q][m]).value;
          if (d < best) {
            best = d;
            bq = q;
            bj = m;
          }
        }
      }
      if (bq == n) {
        covered = false;
        break;
      }
      if (best > accept) {
        const double lo = times[bq][std::max(0, bj - 1)];
        const double hi = times[bq][std::min(kSamples - 1, bj + 1)];
        best = golden_min([&](double s) { return distance(space, x, curve.eval(s)).value; }, lo, hi,
                          param_tol(curve));
      }
      covered = best <= accept;
    }
    dropped[p] = covered;
  }
  return dropped;
}

}  // namespace

LengthResult length_k(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                      const std::vector<double>& grid, double rel_tol, ScaleLadder ladder) {
  require_curve(space, curve);
  if (grid.size() < 2) throw InputError("length_k needs a grid of at least 2 points");
  const Mc1kReport rep = mc1k_check(space, curve, k, grid, rel_tol, ladder);
  LengthResult out;
  out.k = k;
  out.profile = rep.profile;
  std::vector<double> bad;
  for (const auto& e : rep.profile) {
    if (!e.converged) bad.push_back(e.t);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "meas^" << k << " did not converge at t =";
    for (double t : bad) msg << ' ' << t;
    throw InputError(msg.str());
  }
  auto trapezoid = [&](std::size_t stride, auto&& f) {
    double sum = 0.0;
    std::size_t prev = 0;
    for (std::size_t i = stride; ; i += stride) {
      const std::size_t cur = std::min(i, grid.size() - 1);
      sum += 0.5 * (grid[cur] - grid[prev]) * (f(prev) + f(cur));
      prev = cur;
      if (cur == grid.size() - 1) break;
    }
    return sum;
  };
  auto value = [&](std::size_t i) { return rep.profile[i].value; };
  auto gap = [&](std::size_t i) { return rep.profile[i].gap + rep.profile[i].spread; };
  out.value = trapezoid(1, value);
  out.gap = trapezoid(1, gap);
  out.error_estimate = grid.size() >= 3 ? std::abs(out.value - trapezoid(2, value)) : 0.0;
  return out;
}

bool ChainCertificate::validate(const MetricSpaceModel& space, const ParametricCurve& curve) const {
  if (times.size() != points.size() || times.size() != count || count < 1) return false;
  const Interval dom = curve.domain();
  if (times.front() != dom.a || times.back() != dom.b) return false;
  if (!(points.front() == curve.eval(dom.a)) || !(points.back() == curve.eval(dom.b))) return false;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) return false;
    const DistanceResult d = distance(space, points[i - 1], points[i]);
    if (d.value > epsilon + d.gap_estimate) return false;
  }
  return true;
}

ChainCertificate interpolation_complexity(const MetricSpaceModel& space, const ParametricCurve& curve,
                                          double epsilon) {
  require_curve(space, curve);
  require_epsilon(space, epsilon);
  const Interval dom = curve.domain();
  const double tol = param_tol(curve);
  ChainCertificate c;
  c.epsilon = epsilon;
  double t = dom.a;
  Point p = curve.eval(t);
  c.times.push_back(t);
  c.points.push_back(p);
  double hint = 0.0;
  while (t < dom.b) {
    const double next = reach(space, curve, p, t, 1.0, epsilon, hint);
    if (next - t <= tol) {
      std::ostringstream msg;
      msg << "chain bisection stalled at t = " << t << " (distance not locally controllable)";
      throw InputError(msg.str());
    }
    const Point q = curve.eval(next);
    const DistanceResult d = distance(space, p, q);
    c.max_step = std::max(c.max_step, d.value);
    c.gap = std::max(c.gap, d.gap_estimate);
    t = next;
    p = q;
    c.times.push_back(t);
    c.points.push_back(p);
  }
  c.count = c.times.size();
  return c;
}

std::optional<std::size_t> interpolation_complexity_bruteforce(const MetricSpaceModel& space,
                                                               const ParametricCurve& curve, double epsilon,
                                                               std::size_t grid_size,
                                                               const std::vector<double>& extra_times) {
  require_curve(space, curve);
  if (grid_size < 2 || grid_size > 100000) throw InputError("bruteforce grid size must lie in [2, 1e5]");
  const Interval dom = curve.domain();
  std::vector<double> times = uniform_grid(dom, grid_size);
  for (double t : extra_times) {
    if (dom.contains(t)) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const std::size_t n = times.size();
  std::vector<Point> pts;
  pts.reserve(n);
  for (double t : times) pts.push_back(curve.eval(t));

  // next_unvisited[j]: smallest unvisited index >= j (path-compressed).
  std::vector<std::size_t> next_unvisited(n + 1);
  std::iota(next_unvisited.begin(), next_unvisited.end(), 0);
  auto find = [&](std::size_t j) {
    std::size_t root = j;
    while (next_unvisited[root] != root) root = next_unvisited[root];
    while (next_unvisited[j] != root) {
      const std::size_t nx = next_unvisited[j];
      next_unvisited[j] = root;
      j = nx;
    }
    return root;
  };
  std::vector<std::size_t> hops(n, 0);
  std::vector<std::size_t> queue{0};
  next_unvisited[0] = 1;
  hops[0] = 1;
  constexpr int kFarRun = 32;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    if (i == n - 1) return hops[i];
    int far = 0;
    for (std::size_t j = find(i + 1); j < n; j = find(j + 1)) {
      const double d = distance(space, pts[i], pts[j]).value;
      if (d <= epsilon) {
        hops[j] = hops[i] + 1;
        queue.push_back(j);
        next_unvisited[j] = j + 1;
        far = 0;
      } else if (d > 4.0 * epsilon) {
        if (++far >= kFarRun) break;
      } else {
        far = 0;
      }
    }
  }
  return std::nullopt;
}

EntropyResult metric_entropy(const MetricSpaceModel& space, const ParametricCurve& curve, double epsilon) {
  require_curve(space, curve);
  require_epsilon(space, epsilon);
  const Interval dom = curve.domain();
  const double tol = param_tol(curve);
  EntropyResult out;
  out.epsilon = epsilon;
  double pos = dom.a;
  double hint_c = 0.0, hint_e = 0.0;
  while (true) {
    const double c = reach(space, curve, curve.eval(pos), pos, 1.0, epsilon, hint_c);
    const double end = reach(space, curve, curve.eval(c), c, 1.0, epsilon, hint_e);
    out.centers.push_back(c);
    if (end >= dom.b) break;
    if (end - pos <= tol) {
      std::ostringstream msg;
      msg << "entropy march stalled at t = " << pos;
      throw InputError(msg.str());
    }
    pos = end;
  }
  out.count = out.centers.size();
  return out;
}

MatchedCovers matched_covers(const MetricSpaceModel& space, const ParametricCurve& curve, double k, double epsilon) {
  require_curve(space, curve);
  require_epsilon(space, epsilon);
  if (!(k >= 1.0)) throw InputError("k must be >= 1");
  const Interval dom = curve.domain();
  const double tol = param_tol(curve);
  MatchedCovers out;
  out.hausdorff.epsilon = out.spherical.epsilon = epsilon;
  out.hausdorff.k = out.spherical.k = k;
  std::vector<double> h_gaps, s_gaps;
  double t = dom.a;
  double hint = 0.0;
  while (t < dom.b) {
    const Point p = curve.eval(t);
    double next = reach(space, curve, p, t, 1.0, epsilon, hint);
    ArcSamples s;
    for (int shrink = 0;; ++shrink) {
      if (next - t <= tol || shrink > 400) {
        std::ostringstream msg;
        msg << "cannot bring the arc starting at t = " << t << " under diameter " << epsilon;
        throw InputError(msg.str());
      }
      s = sample_diameter(space, curve, t, next);
      if (s.diameter <= epsilon) break;
      next = t + 0.8 * (next - t);
    }
    hint = next - t;

    CoverPiece hp;
    hp.arc = {t, next};
    hp.diameter = s.diameter;
    hp.center = p;
    out.hausdorff.pieces.push_back(hp);
    h_gaps.push_back(power_gap(s.diameter, s.diameter_gap, k));

    // Ball centre candidates; the radius is measured on the same samples.
    std::vector<Point> centers{curve.eval(0.5 * (t + next))};
    try {
      centers.push_back(geodesic_midpoint(space, s.points.front(), s.points.back()));
    } catch (const SolverError&) {
      // keep the parameter midpoint only
    }
    CoverPiece sp = hp;
    sp.radius = std::numeric_limits<double>::infinity();
    double radius_gap = 0.0;
    for (const Point& c : centers) {
      double r = 0.0, g = 0.0;
      for (const Point& q : s.points) {
        const DistanceResult d = distance(space, c, q);
        if (d.value > r) {
          r = d.value;
          g = d.gap_estimate;
        }
      }
      if (r < sp.radius) {
        sp.radius = r;
        sp.center = c;
        radius_gap = g;
      }
    }
    out.spherical.pieces.push_back(sp);
    s_gaps.push_back(power_gap(2.0 * sp.radius, 2.0 * radius_gap, k));
    t = next;
  }

  std::vector<bool> dropped(out.hausdorff.pieces.size(), false);
  if (out.hausdorff.pieces.size() > 1 && !looks_injective(space, curve)) {
    dropped = redundant_pieces(space, curve, out.hausdorff.pieces, epsilon);
  }
  MatchedCovers kept;
  kept.hausdorff.epsilon = kept.spherical.epsilon = epsilon;
  kept.hausdorff.k = kept.spherical.k = k;
  for (std::size_t i = 0; i < dropped.size(); ++i) {
    if (dropped[i]) continue;
    const CoverPiece& hp = out.hausdorff.pieces[i];
    const CoverPiece& sp = out.spherical.pieces[i];
    kept.hausdorff.pieces.push_back(hp);
    kept.hausdorff.cost += std::pow(hp.diameter, k);
    kept.hausdorff.gap += h_gaps[i];
    kept.spherical.pieces.push_back(sp);
    kept.spherical.cost += std::pow(2.0 * sp.radius, k);
    kept.spherical.gap += s_gaps[i];
  }
  return kept;
}

CoverRecord hausdorff_upper(const MetricSpaceModel& space, const ParametricCurve& curve, double k, double epsilon) {
  return matched_covers(space, curve, k, epsilon).hausdorff;
}

CoverRecord spherical_upper(const MetricSpaceModel& space, const ParametricCurve& curve, double k, double epsilon) {
  return matched_covers(space, curve, k, epsilon).spherical;
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Interior:
      return "interior";
    case Side::LeftEndpoint:
      return "left_endpoint";
    case Side::RightEndpoint:
      return "right_endpoint";
  }
  return "interior";
}

BallPreimage ball_preimage(const MetricSpaceModel& space, const ParametricCurve& curve, double center_time,
                           double r) {
  require_curve(space, curve);
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  const Interval dom = curve.domain();
  if (!dom.contains(center_time)) throw InputError("ball centre time lies outside the curve domain");
  const Point c = curve.eval(center_time);
  BallPreimage out;
  out.side = center_time == dom.a ? Side::LeftEndpoint : center_time == dom.b ? Side::RightEndpoint : Side::Interior;
  double hint = 0.0;
  double hi = reach(space, curve, c, center_time, 1.0, r, hint);
  hint = 0.0;
  double lo = reach(space, curve, c, center_time, -1.0, r, hint);

  // Monotonicity of s -> d(g(s), c) on both sides.
  auto monotone_on = [&](double from, double to) {
    double prev = 0.0;
    for (int i = 1; i <= 64; ++i) {
      const DistanceResult d = distance(space, c, curve.eval(from + (to - from) * i / 64.0));
      if (d.value < prev - 2.0 * d.gap_estimate - 1e-12 * prev) return false;
      prev = d.value;
    }
    return true;
  };
  if (!monotone_on(center_time, hi) || !monotone_on(center_time, lo)) {
    out.monotone = false;
    out.warnings.push_back("distance to the centre is not monotone near t; preimage from a fine scan");
    const double span = 4.0 * std::max(hi - center_time, center_time - lo) + param_tol(curve);
    const double s0 = std::max(dom.a, center_time - span);
    const double s1 = std::min(dom.b, center_time + span);
    constexpr int kFine = 4096;
    auto inside = [&](double s) { return distance(space, c, curve.eval(s)).value <= r; };
    const double h = (s1 - s0) / kFine;
    auto idx = static_cast<int>(std::floor((center_time - s0) / h));
    int up = idx, dn = idx;
    while (up < kFine && inside(s0 + (up + 1) * h)) ++up;
    while (dn > 0 && inside(s0 + (dn - 1) * h)) --dn;
    hi = up == kFine ? s1 : s0 + up * h;
    lo = dn == 0 ? s0 : s0 + dn * h;
  }

  // Locality: nothing outside [lo, hi] may come back inside the ball.
  for (int i = 0; i <= 256; ++i) {
    const double s = dom.a + dom.length() * i / 256.0;
    if (s >= lo && s <= hi) continue;
    const DistanceResult d = distance(space, c, curve.eval(s));
    if (d.value + d.gap_estimate < r) {
      std::ostringstream msg;
      msg << "radius " << r << " exceeds the locality scale at t = " << center_time << " (g(" << s
          << ") re-enters the ball); use a smaller radius";
      throw InputError(msg.str());
    }
  }
  out.interval = {lo, hi};
  return out;
}

std::vector<Interval> preimage_intervals(const MetricSpaceModel& space, const ParametricCurve& curve,
                                         const Point& center, double r, const std::vector<double>& seeds) {
  require_curve(space, curve);
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  const Interval dom = curve.domain();
  auto f = [&](double s) { return distance(space, center, curve.eval(s)).value - r; };
  std::vector<double> ts = uniform_grid(dom, 513);
  for (double s : seeds) {
    if (dom.contains(s)) ts.push_back(s);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> fs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = f(ts[i]);

  // Dips that fall between samples.
  std::vector<double> extra;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (fs[i] <= 0.0 || fs[i] > fs[i - 1] || fs[i] > fs[i + 1]) continue;
    double x0 = ts[i - 1], x1 = ts[i + 1];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = x1 - g * (x1 - x0), b = x0 + g * (x1 - x0);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < 80 && x1 - x0 > param_tol(curve); ++it) {
      if (fa < fb) {
        x1 = b;
        b = a;
        fb = fa;
        a = x1 - g * (x1 - x0);
        fa = f(a);
      } else {
        x0 = a;
        a = b;
        fa = fb;
        b = x0 + g * (x1 - x0);
        fb = f(b);
      }
      if (std::min(fa, fb) <= 0.0) break;
    }
    if (fa <= 0.0) extra.push_back(a);
    if (fb <= 0.0) extra.push_back(b);
  }
  if (!extra.empty()) {
    for (double s : extra) ts.push_back(s);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    fs.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = f(ts[i]);
  }

  auto crossing = [&](double in, double out) {
    for (int it = 0; it < 200 && std::abs(out - in) > param_tol(curve); ++it) {
      const double mid = 0.5 * (in + out);
      if (f(mid) <= 0.0) {
        in = mid;
      } else {
        out = mid;
      }
    }
    return in;
  };
  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < ts.size()) {
    if (fs[i] > 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ts.size() && fs[j + 1] <= 0.0) ++j;
    const double lo = i == 0 ? ts[0] : crossing(ts[i], ts[i - 1]);
    const double hi = j + 1 == ts.size() ? ts[j] : crossing(ts[j], ts[j + 1]);
    out.push_back({lo, hi});
    i = j + 1;
  }
  return out;
}

DensityProfile density_profile(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                               double center_time, std::vector<double> radii) {
  require_curve(space, curve);
  if (radii.empty()) throw InputError("density profile needs at least one radius");
  std::sort(radii.begin(), radii.end(), std::greater<>());
  DensityProfile out;
  out.center_time = center_time;
  out.center = curve.eval(center_time);
  out.k = k;
  out.radii = radii;
  out.ratios.resize(radii.size());
  out.gaps.resize(radii.size());
  std::vector<BallPreimage> pre(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    pre[i] = ball_preimage(space, curve, center_time, radii[i]);
    const Interval iv = pre[i].interval;
    double len = 0.0, gap = 0.0;
    if (iv.b > iv.a) {
      const LengthResult L = length_k(space, curve.restricted(iv), k, uniform_grid(iv, 9));
      len = L.value;
      gap = L.gap + L.error_estimate;
    }
    const double denom = 2.0 * std::pow(radii[i], k);
    out.ratios[i] = len / denom;
    out.gaps[i] = gap / denom;
  });
  out.side = pre.front().side;
  for (const auto& p : pre) {
    for (const auto& w : p.warnings) out.warnings.push_back(w);
  }
  return out;
}

HolderBounds holder_bounds_estimate(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                                    double window) {
  require_curve(space, curve);
  const Interval dom = curve.domain();
  if (!(window > 0.0 && window < dom.length())) throw InputError("holder window must lie in (0, b - a)");
  const std::vector<double> ts = uniform_grid(dom, 64);
  std::vector<double> lo(ts.size(), std::numeric_limits<double>::infinity());
  std::vector<double> hi(ts.size(), 0.0);
  std::vector<double> gp(ts.size(), 0.0);
  parallel_for(ts.size(), [&](std::size_t i) {
    const Point p = curve.eval(ts[i]);
    for (int j = 0; j < 16; ++j) {
      const double s = window * std::pow(1e-3, j / 15.0);
      for (double sign : {1.0, -1.0}) {
        const double t2 = ts[i] + sign * s;
        if (!dom.contains(t2)) continue;
        const DistanceResult d = distance(space, p, curve.eval(t2));
        if (d.gap_estimate > 0.0 && d.value < 10.0 * d.gap_estimate) continue;
        const double scale = std::pow(s, 1.0 / k);
        lo[i] = std::min(lo[i], d.value / scale);
        hi[i] = std::max(hi[i], d.value / scale);
        gp[i] = std::max(gp[i], d.gap_estimate / scale);
      }
    }
  });
  HolderBounds out;
  out.delta_minus = *std::min_element(lo.begin(), lo.end());
  out.delta_plus = *std::max_element(hi.begin(), hi.end());
  out.gap = *std::max_element(gp.begin(), gp.end());
  if (!std::isfinite(out.delta_minus)) out.delta_minus = 0.0;
  out.degenerate = !(out.delta_minus > 0.0);
  return out;
}

bool looks_injective(const MetricSpaceModel& space, const ParametricCurve& curve) {
  const std::vector<double> ts = uniform_grid(curve.domain(), 257);
  std::vector<Point> pts;
  for (double t : ts) pts.push_back(curve.eval(t));
  double min_adj = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < pts.size(); ++i) min_adj = std::min(min_adj, distance(space, pts[i - 1], pts[i]).value);
  if (!(min_adj > 0.0)) return false;
  std::vector<char> ok(pts.size(), 1);
  parallel_for(pts.size(), [&](std::size_t i) {
    for (std::size_t j = i + 8; j < pts.size(); ++j) {
      if (distance(space, pts[i], pts[j]).value < 0.5 * min_adj) {
        ok[i] = 0;
        return;
      }
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

MeasureReport verify_main_theorem(const MetricSpaceModel& space, const ParametricCurve& curve, double k,
                                  const VerifyConfig& cfg) {
  require_curve(space, curve);
  if (!looks_injective(space, curve)) {
    throw InputError("curve '" + curve.name() + "' is not injective at sampling resolution; the equality needs an "
                     "injective curve");
  }
  const Interval dom = curve.domain();
  std::vector<double> eps = cfg.epsilons;
  if (eps.empty()) {
    const double D = distance(space, curve.eval(dom.a), curve.eval(dom.b)).value;
    if (!(D > 0.0)) throw InputError("closed curve: give an explicit epsilon schedule");
    for (int i = 0; i < 5; ++i) eps.push_back(0.25 * D * std::pow(0.5, i));
  }
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (eps.size() < 2) throw InputError("epsilon schedule needs at least two values");

  MeasureReport rep;
  rep.k = k;
  rep.rel_tol = cfg.rel_tol;
  const LengthResult L = length_k(space, curve, k, uniform_grid(dom, cfg.length_grid), cfg.meas_rel_tol);
  rep.length_k = {L.value, L.error_estimate + L.gap};

  rep.rows.resize(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) {
    EpsilonRow& row = rep.rows[i];
    row.epsilon = eps[i];
    const MatchedCovers mc = matched_covers(space, curve, k, eps[i]);
    const ChainCertificate chain = interpolation_complexity(space, curve, eps[i]);
    row.hausdorff_cost = mc.hausdorff.cost;
    row.spherical_cost = mc.spherical.cost;
    row.pieces = mc.hausdorff.pieces.size();
    row.chain_count = chain.count;
    row.complexity_scaled = std::pow(eps[i], k) * static_cast<double>(chain.count);
    row.gap = mc.hausdorff.gap + mc.spherical.gap + power_gap(eps[i], chain.gap, k) * chain.count;
    row.ordering_ok = row.hausdorff_cost <= row.spherical_cost + row.gap &&
                      row.spherical_cost <= std::pow(2.0, k) * row.hausdorff_cost + row.gap;
  });
  const EpsilonRow& last = rep.rows.back();
  const EpsilonRow& prev = rep.rows[rep.rows.size() - 2];
  rep.hausdorff_upper = {last.hausdorff_cost, std::abs(last.hausdorff_cost - prev.hausdorff_cost)};
  rep.spherical_upper = {last.spherical_cost, std::abs(last.spherical_cost - prev.spherical_cost)};
  rep.complexity_extrapolation = {last.complexity_scaled, std::abs(last.complexity_scaled - prev.complexity_scaled)};
  rep.gap = L.gap + last.gap;

  const Quantity* q[4] = {&rep.length_k, &rep.hausdorff_upper, &rep.spherical_upper, &rep.complexity_extrapolation};
  rep.agreement_ok = true;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double allowed = cfg.rel_tol * rep.length_k.value + q[i]->tolerance + q[j]->tolerance + rep.gap;
      if (std::abs(q[i]->value - q[j]->value) > allowed) rep.agreement_ok = false;
    }
  }
  rep.ordering_ok = std::all_of(rep.rows.begin(), rep.rows.end(), [](const EpsilonRow& r) { return r.ordering_ok; });
  rep.verdict = rep.agreement_ok && rep.ordering_ok;
  return rep;
}

}  // namespace ccm
