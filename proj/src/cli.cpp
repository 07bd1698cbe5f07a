#include "ccmeasure/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>

#include "ccmeasure/errors.hpp"
#include "ccmeasure/estimators.hpp"
#include "ccmeasure/measures.hpp"

namespace ccm::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string space = "heisenberg";
  std::vector<std::string> curves;
  double k = kNaN;
  std::string eps;
  std::string radii;
  std::string times;
  std::string domain;
  std::string p, q;
  int grid = 0;
  int dp_grid = 4000;
  std::string csv;
  std::string json_path;
  unsigned long long seed = 20240611;
  int nodes = 24;
  int restarts = 8;
  double rel_tol = kNaN;
  int samples = 32;
  int ladder_count = 12;
  double ladder_s0 = 0.0;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

// JSON has no infinities; they travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Result {
  Table table;
  json doc;
  std::string summary;
  int code = 0;
};

void emit(const Options& o, const Result& res, std::ostream& out) {
  auto to_path = [&](const std::string& path, auto&& write) {
    if (path.empty()) return;
    if (path == "-") {
      write(out);
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    write(f);
  };
  to_path(o.csv, [&](std::ostream& os) { res.table.write(os); });
  to_path(o.json_path, [&](std::ostream& os) { os << res.doc.dump(2) << '\n'; });
  if (o.csv != "-" && o.json_path != "-") out << res.summary;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.nodes = o.nodes;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

double require_k(const Options& o) {
  if (std::isnan(o.k)) throw InputError("--k is required");
  return o.k;
}

double rel_tol_or(const Options& o, double fallback) { return std::isnan(o.rel_tol) ? fallback : o.rel_tol; }

ScaleLadder ladder_of(const Options& o) {
  ScaleLadder l;
  l.count = o.ladder_count;
  l.s0 = o.ladder_s0;
  return l;
}

Point parse_point(const std::string& text, const char* flag) {
  if (text.empty()) throw InputError(std::string(flag) + " is required");
  const auto v = parse_list(text);
  if (v.empty() || v.size() > Point::kMaxDim) throw InputError(std::string(flag) + " needs 1..8 coordinates");
  return Point::from(v);
}

RectifiablePiece curve_piece(const Options& o, const MetricSpaceModel& space, std::size_t i) {
  RectifiablePiece piece = parse_curve(o.curves[i], parse_list(o.domain));
  if (piece.curve.dimension() != space.dimension()) {
    throw InputError("curve '" + piece.curve.name() + "' does not live in " + space.name());
  }
  if (std::isfinite(piece.curve.modulus_bound()) && !piece.curve.sample_times().empty()) {
    check_polyline_modulus(space, piece.curve);
  }
  return piece;
}

ParametricCurve single_curve(const Options& o, const MetricSpaceModel& space) {
  if (o.curves.size() != 1) throw InputError("exactly one --curve is required");
  return curve_piece(o, space, 0).curve;
}

std::vector<double> times_or_grid(const Options& o, const ParametricCurve& c, int default_points) {
  if (!o.times.empty()) return parse_list(o.times);
  if (default_points == 1 && o.grid == 0) return {0.5 * (c.domain().a + c.domain().b)};
  return uniform_grid(c.domain(), static_cast<std::size_t>(o.grid > 0 ? o.grid : default_points));
}

std::vector<double> require_eps(const Options& o) {
  const auto e = parse_list(o.eps);
  if (e.empty()) throw InputError("--eps is required");
  for (double x : e) {
    if (!(x > 0.0)) throw InputError("epsilon values must be positive");
  }
  return e;
}

json base_doc(const std::string& command, const MetricSpaceModel& space) {
  return json{{"schema", 1}, {"command", command}, {"space", space.name()}};
}

Result space_dist(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const Point p = parse_point(o.p, "--p"), q = parse_point(o.q, "--q");
  const DistanceResult d = distance(space, p, q);
  const char* kind = d.kind == DistanceKind::Exact ? "exact" : "upper_bound";
  Result r{Table({"value", "kind", "gap"}), base_doc("space dist", space), "", 0};
  r.table.add({fmt(d.value), kind, fmt(d.gap_estimate)});
  r.doc["value"] = num(d.value);
  r.doc["kind"] = kind;
  r.doc["gap"] = num(d.gap_estimate);
  if (d.solver_stats) {
    r.doc["solver"] = {{"iterations", d.solver_stats->iterations}, {"residual", d.solver_stats->residual}};
  }
  std::ostringstream s;
  s << fmt(d.value);
  if (d.kind == DistanceKind::UpperBound) s << " (upper bound, gap " << fmt(d.gap_estimate) << ")";
  s << '\n';
  r.summary = s.str();
  return r;
}

Result curve_meas(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  const double tol = rel_tol_or(o, 1e-2);
  Result r{Table({"t", "k", "value", "converged", "spread", "gap"}), base_doc("curve meas", space), "", 0};
  r.doc["rel_tol"] = tol;
  std::ostringstream s;
  for (double t : times_or_grid(o, c, 1)) {
    const auto e = meas_k_estimate(space, c, t, k, ladder_of(o), tol);
    r.table.add({fmt(t), fmt(k), fmt(e.value), e.converged ? "true" : "false", fmt(e.spread), fmt(e.gap)});
    r.doc["rows"].push_back({{"t", t},
                             {"k", k},
                             {"value", num(e.value)},
                             {"converged", e.converged},
                             {"trend", to_string(e.trend)},
                             {"spread", num(e.spread)},
                             {"gap", num(e.gap)},
                             {"slope", e.slope}});
    s << "t=" << fmt(t) << " meas^" << fmt(k) << "=" << fmt(e.value) << " (" << to_string(e.trend) << ")\n";
  }
  r.summary = s.str();
  return r;
}

Result curve_degree(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  Result r{Table({"t", "k_hat", "fit_residual", "gap"}), base_doc("curve degree", space), "", 0};
  std::ostringstream s;
  for (double t : times_or_grid(o, c, 1)) {
    const auto e = degree_estimate(space, c, t, ladder_of(o));
    r.table.add({fmt(t), fmt(e.k_hat), fmt(e.fit_residual), fmt(e.gap)});
    r.doc["rows"].push_back(
        {{"t", t}, {"k_hat", num(e.k_hat)}, {"fit_residual", e.fit_residual}, {"gap", num(e.gap)}});
    s << "t=" << fmt(t) << " k_hat=" << fmt(e.k_hat) << '\n';
  }
  r.summary = s.str();
  return r;
}

Result curve_mc1k(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  const double tol = rel_tol_or(o, 1e-2);
  const auto grid = times_or_grid(o, c, 33);
  const Mc1kReport rep = mc1k_check(space, c, k, grid, tol, ladder_of(o));
  Result r{Table({"t", "meas", "converged", "gap"}), base_doc("curve mc1k", space), "", rep.passed ? 0 : 1};
  r.doc["k"] = k;
  r.doc["rel_tol"] = tol;
  r.doc["passed"] = rep.passed;
  r.doc["max_jump"] = rep.max_jump;
  r.doc["failing_times"] = rep.failing_times;
  for (const auto& e : rep.profile) {
    r.table.add({fmt(e.t), fmt(e.value), e.converged ? "true" : "false", fmt(e.gap)});
    r.doc["profile"].push_back({{"t", e.t},
                                {"meas", num(e.value)},
                                {"converged", e.converged},
                                {"trend", to_string(e.trend)},
                                {"spread", num(e.spread)},
                                {"gap", num(e.gap)}});
  }
  std::ostringstream s;
  s << (rep.passed ? "PASS" : "FAIL") << ": meas^" << fmt(k) << " on " << grid.size() << " points, max jump "
    << fmt(rep.max_jump) << ", " << rep.failing_times.size() << " failing\n";
  r.summary = s.str();
  return r;
}

Result measure_length(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  const double tol = rel_tol_or(o, 1e-2);
  const auto grid = uniform_grid(c.domain(), static_cast<std::size_t>(o.grid > 0 ? o.grid : 33));
  const LengthResult L = length_k(space, c, k, grid, tol, ladder_of(o));
  Result r{Table({"k", "length", "error_estimate", "gap"}), base_doc("measure length", space), "", 0};
  r.table.add({fmt(k), fmt(L.value), fmt(L.error_estimate), fmt(L.gap)});
  r.doc["k"] = k;
  r.doc["rel_tol"] = tol;
  r.doc["length"] = num(L.value);
  r.doc["error_estimate"] = num(L.error_estimate);
  r.doc["gap"] = num(L.gap);
  r.summary = "Length_" + fmt(k) + " = " + fmt(L.value) + " (error " + fmt(L.error_estimate) + ")\n";
  return r;
}

Result measure_complexity(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  Result r{Table({"eps", "count", "scaled", "dp_count", "gap"}), base_doc("measure complexity", space), "", 0};
  r.doc["k"] = k;
  std::ostringstream s;
  for (double e : require_eps(o)) {
    const ChainCertificate cert = interpolation_complexity(space, c, e);
    const std::size_t n = std::min<std::size_t>(100000, std::max<std::size_t>(o.dp_grid, 4 * cert.count));
    const auto dp = interpolation_complexity_bruteforce(space, c, e, n, cert.times);
    const double scaled = std::pow(e, k) * static_cast<double>(cert.count);
    const std::string dp_text = dp ? std::to_string(*dp) : "none";
    r.table.add({fmt(e), std::to_string(cert.count), fmt(scaled), dp_text, fmt(cert.gap)});
    json row{{"eps", e}, {"count", cert.count}, {"scaled", scaled}, {"gap", num(cert.gap)}, {"max_step", cert.max_step}};
    row["dp_count"] = dp ? json(*dp) : json(nullptr);
    row["dp_grid"] = n;
    r.doc["rows"].push_back(row);
    s << "eps=" << fmt(e) << " chain=" << cert.count << " dp=" << dp_text << " eps^k*count=" << fmt(scaled) << '\n';
  }
  r.summary = s.str();
  return r;
}

Result measure_entropy(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  Result r{Table({"eps", "count", "scaled", "gap"}), base_doc("measure entropy", space), "", 0};
  r.doc["k"] = k;
  std::ostringstream s;
  for (double e : require_eps(o)) {
    const EntropyResult ent = metric_entropy(space, c, e);
    const double scaled = std::pow(e, k) * static_cast<double>(ent.count);
    const double gap = space.resolution_gap();
    r.table.add({fmt(e), std::to_string(ent.count), fmt(scaled), fmt(gap)});
    r.doc["rows"].push_back({{"eps", e}, {"count", ent.count}, {"scaled", scaled}, {"gap", num(gap)}});
    s << "eps=" << fmt(e) << " entropy=" << ent.count << " eps^k*count=" << fmt(scaled) << '\n';
  }
  r.summary = s.str();
  return r;
}

Result measure_hausdorff(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  Result r{Table({"eps", "hausdorff_cost", "spherical_cost", "pieces", "gap"}), base_doc("measure hausdorff", space), "",
           0};
  r.doc["k"] = k;
  std::ostringstream s;
  for (double e : require_eps(o)) {
    const MatchedCovers mc = matched_covers(space, c, k, e);
    const double gap = std::max(mc.hausdorff.gap, mc.spherical.gap);
    r.table.add({fmt(e), fmt(mc.hausdorff.cost), fmt(mc.spherical.cost), std::to_string(mc.hausdorff.pieces.size()),
                 fmt(gap)});
    r.doc["rows"].push_back({{"eps", e},
                             {"hausdorff_cost", num(mc.hausdorff.cost)},
                             {"spherical_cost", num(mc.spherical.cost)},
                             {"pieces", mc.hausdorff.pieces.size()},
                             {"gap", num(gap)}});
    s << "eps=" << fmt(e) << " H=" << fmt(mc.hausdorff.cost) << " S=" << fmt(mc.spherical.cost) << " pieces "
      << mc.hausdorff.pieces.size() << '\n';
  }
  r.summary = s.str();
  return r;
}

Result measure_density(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  const auto ts = times_or_grid(o, c, 1);
  if (ts.size() != 1) throw InputError("density takes a single --t");
  auto radii = parse_list(o.radii);
  if (radii.empty()) radii = {0.2, 0.1, 0.05};
  const DensityProfile prof = density_profile(space, c, k, ts[0], radii);
  Result r{Table({"r", "ratio", "side", "gap"}), base_doc("measure density", space), "", 0};
  r.doc["k"] = k;
  r.doc["t"] = ts[0];
  r.doc["side"] = to_string(prof.side);
  r.doc["warnings"] = prof.warnings;
  std::ostringstream s;
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    r.table.add({fmt(prof.radii[i]), fmt(prof.ratios[i]), to_string(prof.side), fmt(prof.gaps[i])});
    r.doc["rows"].push_back({{"r", prof.radii[i]}, {"ratio", num(prof.ratios[i])}, {"gap", num(prof.gaps[i])}});
    s << "r=" << fmt(prof.radii[i]) << " ratio=" << fmt(prof.ratios[i]) << '\n';
  }
  for (const auto& w : prof.warnings) s << "warning: " << w << '\n';
  r.summary = s.str();
  return r;
}

Result verify_main(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  const ParametricCurve c = single_curve(o, space);
  const double k = require_k(o);
  VerifyConfig cfg;
  if (!o.eps.empty()) cfg.epsilons = require_eps(o);
  if (o.grid > 0) cfg.length_grid = static_cast<std::size_t>(o.grid);
  cfg.rel_tol = rel_tol_or(o, cfg.rel_tol);
  const MeasureReport rep = verify_main_theorem(space, c, k, cfg);
  Result r{Table({"quantity", "value", "tolerance"}), base_doc("verify main-theorem", space), "", rep.verdict ? 0 : 1};
  const std::pair<const char*, Quantity> qs[] = {{"length_k", rep.length_k},
                                                 {"hausdorff", rep.hausdorff_upper},
                                                 {"spherical", rep.spherical_upper},
                                                 {"complexity", rep.complexity_extrapolation}};
  for (const auto& [name, qv] : qs) {
    r.table.add({name, fmt(qv.value), fmt(qv.tolerance)});
    r.doc["quantities"][name] = {{"value", num(qv.value)}, {"tolerance", num(qv.tolerance)}};
  }
  r.doc["k"] = k;
  r.doc["rel_tol"] = rep.rel_tol;
  r.doc["gap"] = num(rep.gap);
  r.doc["agreement_ok"] = rep.agreement_ok;
  r.doc["ordering_ok"] = rep.ordering_ok;
  r.doc["verdict"] = rep.verdict ? "pass" : "fail";
  for (const auto& row : rep.rows) {
    r.doc["rows"].push_back({{"eps", row.epsilon},
                             {"hausdorff_cost", num(row.hausdorff_cost)},
                             {"spherical_cost", num(row.spherical_cost)},
                             {"pieces", row.pieces},
                             {"chain_count", row.chain_count},
                             {"complexity_scaled", row.complexity_scaled},
                             {"gap", num(row.gap)},
                             {"ordering_ok", row.ordering_ok}});
  }
  std::ostringstream s;
  for (const auto& [name, qv] : qs) s << name << " = " << fmt(qv.value) << " +- " << fmt(qv.tolerance) << '\n';
  s << "verdict: " << (rep.verdict ? "pass" : "fail") << '\n';
  r.summary = s.str();
  return r;
}

Result rect_check(const Options& o) {
  const MetricSpaceModel space = parse_space(o.space, solver_config(o));
  if (o.curves.empty()) throw InputError("at least one --curve is required");
  RectifiableSet set;
  set.k = require_k(o);
  for (std::size_t i = 0; i < o.curves.size(); ++i) set.pieces.push_back(curve_piece(o, space, i));
  auto radii = parse_list(o.radii);
  if (radii.empty()) radii = {0.2, 0.1, 0.05, 0.02};
  const double tol = rel_tol_or(o, 0.05);
  const SetValidation val = validate_set(space, set);
  if (!val.passed) {
    std::string msg = "the set failed validation:";
    for (const auto& p : val.problems) msg += "\n  " + p;
    throw InputError(msg);
  }
  const DensityCheckReport rep =
      density_bounds_check(space, set, static_cast<std::size_t>(o.samples), radii, o.seed, tol);
  Result r{Table({"piece", "t", "lower", "upper", "gap"}), base_doc("rect check", space), "", rep.verdict ? 0 : 1};
  r.doc["k"] = rep.k;
  r.doc["radii"] = rep.radii;
  r.doc["tol"] = rep.tol;
  r.doc["lower_bound"] = rep.lower_bound;
  r.doc["upper_bound"] = rep.upper_bound;
  r.doc["seed"] = o.seed;
  r.doc["verdict"] = rep.verdict ? "pass" : "fail";
  std::size_t bad = 0;
  for (const auto& smp : rep.samples) {
    r.table.add({std::to_string(smp.piece), fmt(smp.t), fmt(smp.lower), fmt(smp.upper), fmt(smp.gap)});
    json row{{"piece", smp.piece}, {"t", smp.t},     {"lower", num(smp.lower)},
             {"upper", num(smp.upper)}, {"gap", num(smp.gap)}, {"ok", smp.ok}};
    if (!smp.error.empty()) row["error"] = smp.error;
    r.doc["samples"].push_back(row);
    if (!smp.ok) ++bad;
  }
  std::ostringstream s;
  s << (rep.verdict ? "PASS" : "FAIL") << ": " << rep.samples.size() << " samples, " << bad
    << " outside [" << fmt(rep.lower_bound) << ", " << fmt(rep.upper_bound) << "]\n";
  r.summary = s.str();
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Curve measures in Carnot groups and other metric spaces", "ccmeasure"};
  app.set_config("--config", "", "INI file with option defaults; flags on the command line win");
  // Values such as "p=0,0" stay whole; lists are split by the commands.
  app.get_config_formatter_base()->arrayDelimiter('\x1f');
  app.require_subcommand(1);
  app.add_option("--space", o.space, "euclidean:N, heisenberg or engel");
  app.add_option("--curve", o.curves, "curve specification (repeatable)");
  app.add_option("--k", o.k, "degree");
  app.add_option("--eps", o.eps, "comma-separated epsilon values");
  app.add_option("--radii", o.radii, "comma-separated radii");
  app.add_option("--t", o.times, "comma-separated parameter times");
  app.add_option("--domain", o.domain, "a,b");
  app.add_option("--p", o.p, "first point");
  app.add_option("--q", o.q, "second point");
  app.add_option("--grid", o.grid, "grid points")->check(CLI::NonNegativeNumber);
  app.add_option("--dp-grid", o.dp_grid, "grid of the brute-force chain search")->check(CLI::PositiveNumber);
  app.add_option("--csv", o.csv, "CSV output path, '-' for stdout");
  app.add_option("--json", o.json_path, "JSON output path, '-' for stdout");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--nodes", o.nodes, "transcription nodes (engel)");
  app.add_option("--restarts", o.restarts, "solver restarts (engel)");
  app.add_option("--rel-tol", o.rel_tol, "relative tolerance");
  app.add_option("--samples", o.samples, "density samples per piece")->check(CLI::PositiveNumber);
  app.add_option("--ladder-count", o.ladder_count, "levels of the scale ladder");
  app.add_option("--ladder-s0", o.ladder_s0, "largest ladder step (0: a tenth of the domain)");

  auto group = [&](const char* name, const char* help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [](CLI::App* g, const char* name, const char* help) {
    CLI::App* s = g->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  CLI::App* space_cmd = group("space", "distances");
  CLI::App* curve_cmd = group("curve", "pointwise metric derivatives");
  CLI::App* measure_cmd = group("measure", "measures of a curve");
  CLI::App* verify_cmd = group("verify", "consistency harnesses");
  CLI::App* rect_cmd = group("rect", "rectifiable sets");

  const std::vector<std::pair<CLI::App*, Result (*)(const Options&)>> commands = {
      {leaf(space_cmd, "dist", "distance between --p and --q"), space_dist},
      {leaf(curve_cmd, "meas", "meas^k estimates"), curve_meas},
      {leaf(curve_cmd, "degree", "local degree estimates"), curve_degree},
      {leaf(curve_cmd, "mc1k", "check that meas^k is positive, finite and continuous"), curve_mc1k},
      {leaf(measure_cmd, "length", "k-length"), measure_length},
      {leaf(measure_cmd, "complexity", "interpolation complexity"), measure_complexity},
      {leaf(measure_cmd, "entropy", "metric entropy"), measure_entropy},
      {leaf(measure_cmd, "hausdorff", "Hausdorff and spherical cover costs"), measure_hausdorff},
      {leaf(measure_cmd, "density", "density ratios at a point"), measure_density},
      {leaf(verify_cmd, "main-theorem", "compare the four measures"), verify_main},
      {leaf(rect_cmd, "check", "density bounds on a rectifiable set"), rect_check},
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return 2;
  }

  try {
    for (const auto& [sub, handler] : commands) {
      if (sub->parsed()) {
        const Result res = handler(o);
        emit(o, res, out);
        return res.code;
      }
    }
    err << app.help();
    return 2;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (best bound " << fmt(e.best_bound()) << ", residual "
        << fmt(e.residual()) << ")\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ccm::cli
