#include "ccmeasure/rectifiability.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <random>
#include <sstream>

#include "ccmeasure/errors.hpp"
#include "ccmeasure/estimators.hpp"
#include "ccmeasure/measures.hpp"
#include "ccmeasure/parallel.hpp"

namespace ccm {

namespace {

constexpr double kMinSeparation = 1e-9;

double subset_length_k(const MetricSpaceModel& space, const ParametricCurve& curve, double k, Interval iv) {
  if (!(iv.b > iv.a)) return 0.0;
  return length_k(space, curve.restricted(iv), k, uniform_grid(iv, 9)).value;
}

std::vector<std::string> collision_problems(const MetricSpaceModel& space, const RectifiableSet& set) {
  std::vector<std::vector<Point>> samples(set.pieces.size());
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    for (const Interval& iv : set.subsets_of(i)) {
      for (int m = 0; m < 128; ++m) samples[i].push_back(set.pieces[i].curve.eval(iv.a + iv.length() * (m + 0.5) / 128.0));
    }
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      double closest = std::numeric_limits<double>::infinity();
      for (const Point& p : samples[i]) {
        for (const Point& q : samples[j]) closest = std::min(closest, distance(space, p, q).value);
      }
      if (!(closest > kMinSeparation)) {
        std::ostringstream msg;
        msg << "pieces " << i << " and " << j << " share interior points; refine the disjointification";
        out.push_back(msg.str());
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Interval> RectifiableSet::subsets_of(std::size_t i) const {
  const auto& p = pieces.at(i);
  if (p.subsets.empty()) return {p.curve.domain()};
  return p.subsets;
}

SetValidation validate_set(const MetricSpaceModel& space, const RectifiableSet& set, double rel_tol) {
  SetValidation out;
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    const ParametricCurve& c = set.pieces[i].curve;
    if (c.dimension() != space.dimension()) {
      out.problems.push_back("piece " + std::to_string(i) + " has the wrong dimension");
      continue;
    }
    for (const Interval& iv : set.subsets_of(i)) {
      if (!(iv.b > iv.a) || iv.a < c.domain().a || iv.b > c.domain().b) {
        out.problems.push_back("piece " + std::to_string(i) + " has a subset outside its domain");
      }
    }
    const Mc1kReport rep = mc1k_check(space, c, set.k, uniform_grid(c.domain(), 16), rel_tol);
    if (!rep.passed) out.problems.push_back("piece " + std::to_string(i) + " fails the m-C1_k check");
  }
  for (auto& p : collision_problems(space, set)) out.problems.push_back(std::move(p));
  out.passed = out.problems.empty();
  return out;
}

double set_measure_k(const MetricSpaceModel& space, const RectifiableSet& set) {
  const auto problems = collision_problems(space, set);
  if (!problems.empty()) throw InputError(problems.front());
  double total = 0.0;
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    for (const Interval& iv : set.subsets_of(i)) total += subset_length_k(space, set.pieces[i].curve, set.k, iv);
  }
  return total;
}

DensityCheckReport density_bounds_check(const MetricSpaceModel& space, const RectifiableSet& set,
                                        std::size_t samples_per_piece, std::vector<double> radii,
                                        unsigned long long seed, double tol) {
  if (radii.size() < 2) throw InputError("density check needs at least two radii");
  std::sort(radii.begin(), radii.end(), std::greater<>());
  if (!(radii.back() > 0.0)) throw InputError("radii must be positive");
  if (radii.front() < 10.0 * radii.back()) throw InputError("the radius schedule must span at least one decade");
  DensityCheckReport rep;
  rep.k = set.k;
  rep.radii = radii;
  rep.tol = tol;
  rep.lower_bound = 2.0 * (1.0 - tol);
  rep.upper_bound = std::pow(2.0, set.k) * (1.0 + tol);

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    const auto subsets = set.subsets_of(i);
    std::vector<double> weights;
    for (const Interval& iv : subsets) weights.push_back(iv.length());
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    for (std::size_t n = 0; n < samples_per_piece; ++n) {
      const Interval iv = subsets[pick(rng)];
      const double margin = 0.05 * iv.length();
      std::uniform_real_distribution<double> u(iv.a + margin, iv.b - margin);
      DensitySample s;
      s.piece = i;
      s.t = u(rng);
      s.point = set.pieces[i].curve.eval(s.t);
      rep.samples.push_back(std::move(s));
    }
  }

  parallel_for(rep.samples.size(), [&](std::size_t n) {
    DensitySample& s = rep.samples[n];
    try {
      for (double r : radii) {
        double total = 0.0;
        for (std::size_t i = 0; i < set.pieces.size(); ++i) {
          const ParametricCurve& c = set.pieces[i].curve;
          std::vector<double> seeds;
          if (i == s.piece) seeds.push_back(s.t);
          for (const Interval& pre : preimage_intervals(space, c, s.point, r, seeds)) {
            for (const Interval& sub : set.subsets_of(i)) {
              const Interval cut{std::max(pre.a, sub.a), std::min(pre.b, sub.b)};
              total += subset_length_k(space, c, set.k, cut);
            }
          }
        }
        s.densities.push_back(total / std::pow(r, set.k));
      }
      const std::size_t m = s.densities.size();
      s.lower = std::min(s.densities[m - 1], s.densities[m - 2]);
      s.upper = std::max(s.densities[m - 1], s.densities[m - 2]);
      s.ok = s.lower >= rep.lower_bound && s.upper <= rep.upper_bound;
    } catch (const std::exception& e) {
      s.error = e.what();
      s.ok = false;
    }
  });
  rep.verdict = std::all_of(rep.samples.begin(), rep.samples.end(), [](const DensitySample& s) { return s.ok; });
  return rep;
}

}  // namespace ccm
