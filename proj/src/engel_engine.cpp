#include "ccmeasure/engel_engine.hpp"

#include <algorithm>
#include <cmath>

#include "ccmeasure/control_solver.hpp"

namespace ccm::detail {

namespace {

constexpr std::array<int, 4> kEngelWeights{1, 1, 2, 3};

Point engel_inverse(const Point& p) {
  const double x = p[0], y = p[1], z = p[2], w = p[3];
  return Point{-x, -y, x * y - z, -w + x * z - 0.5 * x * x * y};
}

struct Normalized {
  double lambda;
  Point unit;
};

Normalized normalize(const Point& v) {
  double lambda = 0.0;
  for (std::size_t i = 0; i < 4; ++i) lambda = std::max(lambda, std::pow(std::abs(v[i]), 1.0 / kEngelWeights[i]));
  Point u(4);
  for (std::size_t i = 0; i < 4; ++i) u[i] = v[i] / std::pow(lambda, kEngelWeights[i]);
  return {lambda, u};
}

// Four-point Lagrange interpolation on a uniform grid over [0,1].
double interpolate(const std::vector<double>& values, double s, std::size_t stride = 1) {
  const std::size_t last = (values.size() - 1) / stride;
  const double pos = s * static_cast<double>(last);
  auto base = static_cast<long long>(std::floor(pos)) - 1;
  base = std::clamp<long long>(base, 0, static_cast<long long>(last) - 3);
  double result = 0.0;
  for (int i = 0; i < 4; ++i) {
    double li = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      li *= (pos - static_cast<double>(base + j)) / static_cast<double>(i - j);
    }
    result += li * values[static_cast<std::size_t>(base + i) * stride];
  }
  return result;
}

}  // namespace

std::size_t EngelEngine::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 0;
  for (long long v : k) h ^= std::hash<long long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

EngelEngine::EngelEngine(SolverConfig cfg) : cfg_(cfg) { cfg_.validate(); }

namespace {

Point dilate4(double lambda, const Point& p) {
  return Point{lambda * p[0], lambda * p[1], lambda * lambda * p[2], lambda * lambda * lambda * p[3]};
}

// sym bit 0: (x,y,z,w) -> (x,-y,-z,-w); bit 1: (x,y,z,w) -> (-x,y,-z,w).
Point apply_sym(int sym, Point c) {
  if (sym & 1) c = Point{c[0], -c[1], -c[2], -c[3]};
  if (sym & 2) c = Point{-c[0], c[1], -c[2], c[3]};
  return c;
}

Point engel_compose(const Point& p, const Point& q) {
  return Point{p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1],
               p[3] + q[3] + p[0] * q[2] + 0.5 * p[0] * p[0] * q[1]};
}

}  // namespace

EngelEngine::UnitSolve EngelEngine::solve_unit(const Point& unit) const {
  const ControlSolveResult r = solve_min_length(HorizontalSystem::Engel, unit, cfg_);
  UnitSolve out;
  out.result.value = r.length;
  out.result.kind = DistanceKind::UpperBound;
  out.result.gap_estimate = r.restart_spread + r.refinement_delta;
  out.result.solver_stats = SolverStats{r.iterations, r.residual};
  out.mid = control_path_point(HorizontalSystem::Engel, r.controls, 0.5);
  return out;
}

const EngelEngine::Table& EngelEngine::table() const {
  std::call_once(table_once_, [this] {
    const auto n = static_cast<std::size_t>(cfg_.plane_table_nodes);
    table_.edge_z.resize(n + 1);
    table_.edge_w.resize(n + 1);
    for (std::size_t c = 0; c < 4; ++c) {
      table_.mid_z[c].resize(n + 1);
      table_.mid_w[c].resize(n + 1);
    }
    for (std::size_t i = 0; i <= n; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(n);
      const UnitSolve a = solve_unit(Point{0.0, 0.0, 1.0, s});
      table_.edge_z[i] = a.result.value;
      for (std::size_t c = 0; c < 4; ++c) table_.mid_z[c][i] = a.mid[c];
      table_.solver_gap = std::max(table_.solver_gap, a.result.gap_estimate);
      if (i == n) {
        table_.edge_w[i] = a.result.value;
        for (std::size_t c = 0; c < 4; ++c) table_.mid_w[c][i] = a.mid[c];
        continue;
      }
      const UnitSolve b = solve_unit(Point{0.0, 0.0, s, 1.0});
      table_.edge_w[i] = b.result.value;
      for (std::size_t c = 0; c < 4; ++c) table_.mid_w[c][i] = b.mid[c];
      table_.solver_gap = std::max(table_.solver_gap, b.result.gap_estimate);
    }
    // Error of the half-resolution interpolant at the odd nodes; the
    // full-resolution cubic is roughly 16x better.
    double coarse_err = 0.0;
    for (const auto* edge : {&table_.edge_z, &table_.edge_w}) {
      for (std::size_t i = 1; i < n; i += 2) {
        const double s = static_cast<double>(i) / static_cast<double>(n);
        coarse_err = std::max(coarse_err, std::abs(interpolate(*edge, s, 2) - (*edge)[i]));
      }
    }
    table_.interp_gap = coarse_err / 16.0 + 1e-12;
  });
  return table_;
}

double EngelEngine::table_gap() const {
  const Table& t = table();
  return t.solver_gap + t.interp_gap;
}

DistanceResult EngelEngine::plane_norm(double z, double w) const {
  const double az = std::abs(z);
  const double aw = std::abs(w);
  DistanceResult out;
  out.kind = DistanceKind::UpperBound;
  if (az == 0.0 && aw == 0.0) return out;
  const Table& t = table();
  const double rz = std::sqrt(az);
  const double rw = std::cbrt(aw);
  const double lambda = std::max(rz, rw);
  double unit_value = 0.0;
  if (rz >= rw) {
    unit_value = interpolate(t.edge_z, std::clamp(aw / (lambda * lambda * lambda), 0.0, 1.0));
  } else {
    unit_value = interpolate(t.edge_w, std::clamp(az / (lambda * lambda), 0.0, 1.0));
  }
  out.value = lambda * unit_value;
  out.gap_estimate = lambda * (t.solver_gap + t.interp_gap);
  return out;
}

EngelEngine::Canonical EngelEngine::canonicalize(const Point& v) const {
  Canonical best{{}, 0.0, Point(4), false, 0};
  bool have = false;
  for (int inv = 0; inv < 2; ++inv) {
    const Point base = inv ? engel_inverse(v) : v;
    for (int sym = 0; sym < 4; ++sym) {
      Normalized nrm = normalize(apply_sym(sym, base));
      Key key{};
      for (std::size_t i = 0; i < 4; ++i) key[i] = std::llround(nrm.unit[i] * 1e6);
      if (!have || key < best.key) {
        have = true;
        best = Canonical{key, nrm.lambda, nrm.unit, inv == 1, sym};
      }
    }
  }
  return best;
}

EngelEngine::UnitSolve EngelEngine::cached_unit(const Canonical& c) const {
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(c.key);
    if (it != cache_.end()) return it->second;
  }
  UnitSolve r = solve_unit(c.unit);
  std::unique_lock lock(cache_mutex_);
  cache_.emplace(c.key, r);
  return r;
}

DistanceResult EngelEngine::norm(const Point& v) const {
  if (v.is_zero()) return DistanceResult{0.0, DistanceKind::Exact, 0.0, std::nullopt};
  if (v[0] == 0.0 && v[1] == 0.0) return plane_norm(v[2], v[3]);
  const Canonical c = canonicalize(v);
  DistanceResult out = cached_unit(c).result;
  out.value *= c.lambda;
  out.gap_estimate *= c.lambda;
  return out;
}

Point EngelEngine::midpoint(const Point& v) const {
  if (v.is_zero()) return v;
  if (v[0] == 0.0 && v[1] == 0.0) {
    const Table& t = table();
    const double az = std::abs(v[2]);
    const double aw = std::abs(v[3]);
    const double lambda = std::max(std::sqrt(az), std::cbrt(aw));
    Point m(4);
    if (std::sqrt(az) >= std::cbrt(aw)) {
      const double s = std::clamp(aw / (lambda * lambda * lambda), 0.0, 1.0);
      for (std::size_t i = 0; i < 4; ++i) m[i] = interpolate(t.mid_z[i], s);
    } else {
      const double s = std::clamp(az / (lambda * lambda), 0.0, 1.0);
      for (std::size_t i = 0; i < 4; ++i) m[i] = interpolate(t.mid_w[i], s);
    }
    int sym = 0;
    if (v[2] < 0.0 && v[3] >= 0.0) sym = 2;
    if (v[2] >= 0.0 && v[3] < 0.0) sym = 3;
    if (v[2] < 0.0 && v[3] < 0.0) sym = 1;
    return apply_sym(sym, dilate4(lambda, m));
  }
  const Canonical c = canonicalize(v);
  const Point m = apply_sym(c.sym, dilate4(c.lambda, cached_unit(c).mid));
  // m is a midpoint between 0 and v^-1 when the orbit representative came
  // from the inverse; translating by v maps that path onto one from v to 0.
  return c.inverted ? engel_compose(v, m) : m;
}

std::size_t EngelEngine::cache_size() const {
  std::shared_lock lock(cache_mutex_);
  return cache_.size();
}

}  // namespace ccm::detail
