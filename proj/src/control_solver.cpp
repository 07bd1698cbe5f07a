#include "ccmeasure/control_solver.hpp"

#include <Eigen/Dense>
#include <ceres/ceres.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ccmeasure/errors.hpp"

namespace ccm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::size_t state_dim(HorizontalSystem system) { return system == HorizontalSystem::Heisenberg ? 3 : 4; }

// One closed-form segment step; optionally fills the state and control
// Jacobians (row-major n x n and n x 2).
void step(HorizontalSystem system, double h, double a, double b, std::array<double, 4>& s, double* ds,
          double* du) {
  const double x = s[0];
  const double y = s[1];
  const std::size_t n = state_dim(system);
  if (ds) {
    std::fill(ds, ds + n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) ds[i * n + i] = 1.0;
    std::fill(du, du + n * 2, 0.0);
    du[0 * 2 + 0] = h;
    du[1 * 2 + 1] = h;
  }
  if (system == HorizontalSystem::Heisenberg) {
    if (ds) {
      ds[2 * n + 0] = 0.5 * b * h;
      ds[2 * n + 1] = -0.5 * a * h;
      du[2 * 2 + 0] = -0.5 * y * h;
      du[2 * 2 + 1] = 0.5 * x * h;
    }
    s[2] += 0.5 * (x * b - y * a) * h;
  } else {
    const double h2 = h * h;
    const double h3 = h2 * h;
    if (ds) {
      ds[2 * n + 0] = b * h;
      ds[3 * n + 0] = 0.5 * b * (2.0 * x * h + a * h2);
      du[2 * 2 + 0] = 0.5 * b * h2;
      du[2 * 2 + 1] = x * h + 0.5 * a * h2;
      du[3 * 2 + 0] = 0.5 * b * (x * h2 + 2.0 * a * h3 / 3.0);
      du[3 * 2 + 1] = 0.5 * (x * x * h + x * a * h2 + a * a * h3 / 3.0);
    }
    s[2] += b * (x * h + 0.5 * a * h2);
    s[3] += 0.5 * b * (x * x * h + x * a * h2 + a * a * h3 / 3.0);
  }
  s[0] += a * h;
  s[1] += b * h;
}

// Endpoint and its Jacobian with respect to all controls (n x 2N).
VectorXd endpoint(HorizontalSystem system, const VectorXd& u, MatrixXd* jac) {
  const std::size_t n = state_dim(system);
  const auto nodes = static_cast<std::size_t>(u.size() / 2);
  const double h = 1.0 / static_cast<double>(nodes);
  std::array<double, 4> s{};
  if (!jac) {
    for (std::size_t i = 0; i < nodes; ++i) step(system, h, u[2 * i], u[2 * i + 1], s, nullptr, nullptr);
    return Eigen::Map<VectorXd>(s.data(), static_cast<Eigen::Index>(n));
  }
  std::vector<double> ds(nodes * n * n);
  std::vector<double> du(nodes * n * 2);
  for (std::size_t i = 0; i < nodes; ++i) {
    step(system, h, u[2 * i], u[2 * i + 1], s, &ds[i * n * n], &du[i * n * 2]);
  }
  jac->resize(static_cast<Eigen::Index>(n), u.size());
  MatrixXd acc = MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = nodes; i-- > 0;) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> dsi(
        &ds[i * n * n], static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> dui(
        &du[i * n * 2], static_cast<Eigen::Index>(n), 2);
    jac->middleCols(static_cast<Eigen::Index>(2 * i), 2) = acc * dui;
    acc = acc * dsi;
  }
  return Eigen::Map<VectorXd>(s.data(), static_cast<Eigen::Index>(n));
}

struct Objective {
  HorizontalSystem system;
  VectorXd target;
  VectorXd multiplier;
  double mu;

  double operator()(const VectorXd& u, VectorXd* grad) const {
    const double h = 2.0 / static_cast<double>(u.size());
    MatrixXd jac;
    const VectorXd r = endpoint(system, u, grad ? &jac : nullptr) - target;
    const double f = h * u.squaredNorm() + multiplier.dot(r) + mu * r.squaredNorm();
    if (grad) *grad = 2.0 * h * u + jac.transpose() * (multiplier + 2.0 * mu * r);
    return f;
  }
};

class CeresObjective final : public ceres::FirstOrderFunction {
 public:
  explicit CeresObjective(const Objective& obj, int n) : obj_(obj), n_(n) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    const Eigen::Map<const VectorXd> u(parameters, n_);
    VectorXd g;
    *cost = obj_(u, gradient ? &g : nullptr);
    if (gradient) Eigen::Map<VectorXd>(gradient, n_) = g;
    return std::isfinite(*cost);
  }

  int NumParameters() const override { return n_; }

 private:
  const Objective& obj_;
  int n_;
};

// BFGS line search from Ceres. Returns the iteration count.
int minimise_bfgs(const Objective& obj, VectorXd& u, int max_iterations, double grad_tol) {
  ceres::GradientProblem problem(new CeresObjective(obj, static_cast<int>(u.size())));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::BFGS;
  options.max_num_iterations = max_iterations;
  options.gradient_tolerance = grad_tol;
  options.function_tolerance = 1e-16;
  options.parameter_tolerance = 1e-14;
  options.logging_type = ceres::SILENT;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, u.data(), &summary);
  return static_cast<int>(summary.iterations.size());
}

// Minimum-norm Gauss-Newton steps onto the endpoint constraint.
double project_feasible(HorizontalSystem system, const VectorXd& target, VectorXd& u, double tol) {
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    MatrixXd jac;
    const VectorXd r = endpoint(system, u, &jac) - target;
    res = r.norm();
    if (res <= tol) break;
    const MatrixXd jjt = jac * jac.transpose();
    const VectorXd delta = jac.transpose() * jjt.ldlt().solve(r);
    double alpha = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      const VectorXd trial = u - alpha * delta;
      if ((endpoint(system, trial, nullptr) - target).norm() < res) {
        u = trial;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
  }
  return (endpoint(system, u, nullptr) - target).norm();
}

double length_of(const VectorXd& u) {
  const auto nodes = u.size() / 2;
  double len = 0.0;
  for (Eigen::Index i = 0; i < nodes; ++i) len += std::hypot(u[2 * i], u[2 * i + 1]);
  return len / static_cast<double>(nodes);
}

struct Candidate {
  VectorXd u;
  double length = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

Candidate run_from(HorizontalSystem system, const VectorXd& target, VectorXd u, const SolverConfig& cfg) {
  Candidate c;
  // Start from a feasible path with least-squares multipliers; at u = 0 the
  // Engel endpoint map has a vanishing Jacobian and the penalty alone stalls.
  project_feasible(system, target, u, 1e-8);
  Objective obj{system, target, VectorXd::Zero(target.size()), cfg.penalty_weight};
  {
    MatrixXd jac;
    endpoint(system, u, &jac);
    const double h = 2.0 / static_cast<double>(u.size());
    obj.multiplier = -(jac * jac.transpose()).ldlt().solve(jac * (2.0 * h * u));
  }
  for (int stage = 0; stage < 4; ++stage) {
    c.iterations += minimise_bfgs(obj, u, cfg.max_iterations, 1e-9);
    const VectorXd r = endpoint(system, u, nullptr) - target;
    obj.multiplier += 2.0 * obj.mu * r;
    obj.mu *= 10.0;
  }
  c.residual = project_feasible(system, target, u, 0.1 * cfg.tolerance);
  c.length = length_of(u);
  c.u = std::move(u);
  return c;
}

std::uint64_t target_hash(const Point& target, std::uint64_t seed) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (double v : target.coords()) {
    h ^= std::bit_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

VectorXd smooth_random_controls(std::mt19937_64& rng, int nodes, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kModes = 4;
  std::array<double, 4 * kModes> coef{};
  for (int m = 0; m < kModes; ++m) {
    for (int j = 0; j < 4; ++j) coef[static_cast<std::size_t>(4 * m + j)] = normal(rng) / (1.0 + m);
  }
  VectorXd u(2 * nodes);
  for (int i = 0; i < nodes; ++i) {
    const double t = (i + 0.5) / nodes;
    double u1 = 0.0;
    double u2 = 0.0;
    for (int m = 0; m < kModes; ++m) {
      const double c = std::cos(2.0 * std::numbers::pi * m * t);
      const double s = std::sin(2.0 * std::numbers::pi * m * t);
      u1 += coef[static_cast<std::size_t>(4 * m)] * c + coef[static_cast<std::size_t>(4 * m + 1)] * s;
      u2 += coef[static_cast<std::size_t>(4 * m + 2)] * c + coef[static_cast<std::size_t>(4 * m + 3)] * s;
    }
    u[2 * i] = scale * u1;
    u[2 * i + 1] = scale * u2;
  }
  return u;
}

}  // namespace

Point integrate_controls(HorizontalSystem system, const std::vector<double>& controls) {
  if (controls.empty() || controls.size() % 2 != 0) throw InputError("controls must hold (u1,u2) pairs");
  const VectorXd u = Eigen::Map<const VectorXd>(controls.data(), static_cast<Eigen::Index>(controls.size()));
  const VectorXd e = endpoint(system, u, nullptr);
  return Point::from({e.data(), static_cast<std::size_t>(e.size())});
}

double control_length(const std::vector<double>& controls) {
  if (controls.empty() || controls.size() % 2 != 0) throw InputError("controls must hold (u1,u2) pairs");
  return length_of(Eigen::Map<const VectorXd>(controls.data(), static_cast<Eigen::Index>(controls.size())));
}

Point control_path_point(HorizontalSystem system, const std::vector<double>& controls, double fraction) {
  if (controls.empty() || controls.size() % 2 != 0) throw InputError("controls must hold (u1,u2) pairs");
  const std::size_t nodes = controls.size() / 2;
  const double h = 1.0 / static_cast<double>(nodes);
  double remaining = std::clamp(fraction, 0.0, 1.0) * control_length(controls);
  std::array<double, 4> s{};
  for (std::size_t i = 0; i < nodes && remaining > 0.0; ++i) {
    const double a = controls[2 * i];
    const double b = controls[2 * i + 1];
    const double seg = std::hypot(a, b) * h;
    const double hh = seg <= remaining ? h : remaining / std::hypot(a, b);
    step(system, hh, a, b, s, nullptr, nullptr);
    remaining -= seg;
  }
  return Point::from({s.data(), state_dim(system)});
}

ControlSolveResult solve_min_length(HorizontalSystem system, const Point& target, const SolverConfig& cfg) {
  cfg.validate();
  if (target.dim() != state_dim(system)) throw InputError("control target has the wrong dimension");
  ControlSolveResult out;
  if (target.is_zero()) {
    out.converged = true;
    out.controls.assign(static_cast<std::size_t>(2 * cfg.nodes), 0.0);
    return out;
  }
  const VectorXd tgt = Eigen::Map<const VectorXd>(target.coords().data(), static_cast<Eigen::Index>(target.dim()));

  // Rough homogeneous size of the target sets the scale of the initial guesses.
  double scale = 0.0;
  for (std::size_t i = 0; i < target.dim(); ++i) {
    const int w = i < 2 ? 1 : static_cast<int>(i);
    scale = std::max(scale, std::pow(std::abs(target[i]), 1.0 / w));
  }
  scale *= 2.0;

  std::mt19937_64 rng(target_hash(target, cfg.seed));
  std::vector<Candidate> runs;
  runs.reserve(static_cast<std::size_t>(cfg.restarts));
  for (int r = 0; r < cfg.restarts; ++r) {
    runs.push_back(run_from(system, tgt, smooth_random_controls(rng, cfg.nodes, scale), cfg));
  }
  std::vector<double> feasible;
  const Candidate* best = nullptr;
  for (const auto& c : runs) {
    out.iterations += c.iterations;
    if (c.residual <= cfg.tolerance) {
      feasible.push_back(c.length);
      if (!best || c.length < best->length) best = &c;
    }
  }
  if (!best) {
    const auto it = std::min_element(runs.begin(), runs.end(),
                                     [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
    throw SolverError("direct transcription did not reach the endpoint after all restarts", it->length,
                      it->residual);
  }
  std::sort(feasible.begin(), feasible.end());
  // Agreement among the better half of the restarts; stragglers stuck in
  // poor local minima do not inflate the gap.
  const std::size_t half = std::max<std::size_t>(1, (feasible.size() + 1) / 2);
  out.restart_spread = feasible[half - 1] - feasible[0];
  out.coarse_length = best->length;

  // Refine: split every node in two and re-solve from the coarse optimum.
  VectorXd fine(2 * best->u.size());
  for (Eigen::Index i = 0; i < best->u.size() / 2; ++i) {
    fine.segment(4 * i, 2) = best->u.segment(2 * i, 2);
    fine.segment(4 * i + 2, 2) = best->u.segment(2 * i, 2);
  }
  Candidate refined = run_from(system, tgt, fine, cfg);
  out.iterations += refined.iterations;
  const Candidate& chosen = (refined.residual <= cfg.tolerance && refined.length < best->length) ? refined : *best;
  out.length = chosen.length;
  out.residual = chosen.residual;
  out.refinement_delta = refined.residual <= cfg.tolerance ? std::abs(best->length - refined.length) : 0.0;
  out.converged = true;
  out.controls.assign(chosen.u.data(), chosen.u.data() + chosen.u.size());
  return out;
}

}  // namespace ccm
