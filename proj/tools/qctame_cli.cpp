// qctame command-line driver.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qctame/clustering.hpp"
#include "qctame/covering.hpp"
#include "qctame/error.hpp"
#include "qctame/format.hpp"
#include "qctame/modulus.hpp"
#include "qctame/pointsets.hpp"
#include "qctame/qcmaps.hpp"
#include "qctame/serialize.hpp"
#include "qctame/svg.hpp"
#include "qctame/verdict.hpp"

namespace fs = std::filesystem;
using namespace qctame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::string out = ".";
  std::string format = "csv";
  bool svg = false;
  unsigned threads = 0;
  std::optional<double> budget;
};

struct SetArgs {
  std::string name;
  std::optional<double> s;
  std::string points;
  std::string set_json;
};

struct WindowArgs {
  std::string disk;
  std::string square;
  std::string schedule;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "output directory");
  app->add_option("--format", c.format, "primary output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_flag("--svg", c.svg, "also write an SVG plot");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app->add_option("--budget", c.budget, "work budget for the command");
}

void add_set(CLI::App* app, SetArgs& s) {
  app->add_option("--set", s.name, "built-in set family")
      ->check(CLI::IsMember({"integers", "gaussint", "as", "asprime", "geometric", "shrinkingrings"}));
  app->add_option("--s", s.s, "exponent for as / asprime");
  app->add_option("--points", s.points, "CSV point list");
  app->add_option("--set-json", s.set_json, "SetSpec JSON file");
}

void add_windows(CLI::App* app, WindowArgs& w) {
  app->add_option("--disk", w.disk, "disk window cx,cy,r");
  app->add_option("--square", w.square, "square window cx,cy,r (r = half side)");
  app->add_option("--schedule", w.schedule, "CSV window schedule");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw InvalidArgument(what + " must be " + std::to_string(expected) + " comma-separated numbers");
    }
    if (used != field.size() || !std::isfinite(v)) {
      throw InvalidArgument(what + " must be " + std::to_string(expected) + " comma-separated numbers");
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw InvalidArgument(what + " must be " + std::to_string(expected) + " comma-separated numbers");
  }
  return out;
}

SetSpec build_set(const SetArgs& a) {
  const int sources = !a.name.empty() + !a.points.empty() + !a.set_json.empty();
  if (sources != 1) throw InvalidArgument("give exactly one of --set, --points, --set-json");
  if (!a.points.empty()) return load_points(a.points);
  if (!a.set_json.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(a.set_json));
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(a.set_json + ": " + e.what());
    }
    return set_spec_from_json(j);
  }
  const bool wants_s = a.name == "as" || a.name == "asprime";
  if (wants_s && !a.s) throw InvalidArgument("--s is required for " + a.name);
  if (!wants_s && a.s) throw InvalidArgument("--s only applies to as and asprime");
  if (a.name == "integers") return SetSpec::integers();
  if (a.name == "gaussint") return SetSpec::gauss_int();
  if (a.name == "as") return SetSpec::family_as(*a.s);
  if (a.name == "asprime") return SetSpec::family_as_prime(*a.s);
  if (a.name == "geometric") return SetSpec::geometric();
  return SetSpec::shrinking_rings();
}

std::optional<Window> single_window(const WindowArgs& w) {
  if (!w.disk.empty() && !w.square.empty()) throw InvalidArgument("give at most one of --disk, --square");
  if (!w.disk.empty()) {
    const auto v = parse_numbers(w.disk, 3, "--disk");
    return Window::disk({v[0], v[1]}, v[2]);
  }
  if (!w.square.empty()) {
    const auto v = parse_numbers(w.square, 3, "--square");
    return Window::square({v[0], v[1]}, v[2]);
  }
  return std::nullopt;
}

std::vector<Window> windows(const WindowArgs& w, const SetSpec& set) {
  if (!w.schedule.empty()) {
    if (!w.disk.empty() || !w.square.empty()) throw InvalidArgument("--schedule excludes --disk/--square");
    return parse_schedule_csv(read_file(w.schedule), w.schedule);
  }
  if (auto one = single_window(w)) return {*one};
  return default_schedule(set);
}

std::string human(double v) { return format_double(v, kHumanDigits); }

struct Outcome {
  int code = kExitOk;
  std::string summary;
  Json details = Json::object();
};

void finish(const std::string& command, const Common& c, const Outcome& o) {
  Json summary{{"command", command},
               {"exit_code", o.code},
               {"summary", o.summary}};
  summary["details"] = o.details;
  write_file(fs::path(c.out) / "summary.json", dump(summary));
  std::cout << o.summary << "\n";
}

// ---- subcommands ----

Outcome run_generate(const SetArgs& sa, const WindowArgs& wa, Common& c) {
  const SetSpec set = build_set(sa);
  const auto w = single_window(wa);
  if (!w) throw InvalidArgument("generate needs --disk or --square");
  fs::path target = fs::path(c.out);
  if (target.extension() == ".csv" || target.extension() == ".json") {
    c.out = target.has_parent_path() ? target.parent_path().string() : ".";
  } else {
    target /= c.format == "json" ? "points.json" : "points.csv";
  }
  const auto pts = enumerate(set, *w);
  if (target.extension() == ".json") {
    Json arr = Json::array();
    for (const Point& p : pts) arr.push_back(Json::array({p.re, p.im}));
    write_file(target, dump(Json{{"set", to_json(set)}, {"window", to_json(*w)}, {"points", arr}}));
  } else {
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    save_points(pts, target);
  }
  Outcome o;
  o.summary = std::to_string(pts.size()) + " points written to " + target.string();
  o.details = Json{{"count", pts.size()}, {"file", target.string()}};
  return o;
}

Outcome run_covering(const SetArgs& sa, const WindowArgs& wa, const Common& c, double tol, bool relative) {
  const SetSpec set = build_set(sa);
  const auto schedule = windows(wa, set);
  RatioScanOptions options;
  options.threads = c.threads;
  options.tol_relative_to_extent = relative;
  if (c.budget) {
    if (!(*c.budget >= 1.0)) throw InvalidArgument("--budget must be at least 1");
    options.covering.sample_budget = static_cast<std::uint64_t>(*c.budget);
  }
  const GrowthReport report = ratio_scan(set, schedule, tol, options);
  const fs::path out(c.out);
  if (c.format == "json") write_file(out / "ratios.json", dump(to_json(report)));
  else write_file(out / "ratios.csv", growth_report_csv(report));
  write_file(out / "growth.json", dump(growth_summary_json(report)));
  if (c.svg) {
    PlotSpec plot{"Theorem A ratio", "extent", "extent / covering radius", true, {}};
    PlotSeries lo{"ratio lower bound", {}}, closed{"closed form", {}};
    for (const auto& s : report.samples) {
      if (s.ratio) lo.points.emplace_back(s.window.extent(), s.ratio->lo);
      if (s.closed_form_ratio) closed.points.emplace_back(s.window.extent(), *s.closed_form_ratio);
    }
    plot.series.push_back(lo);
    if (!closed.points.empty()) plot.series.push_back(closed);
    write_file(out / "ratios.svg", line_plot_svg(plot));
  }
  Outcome o;
  bool exhausted = false;
  for (const auto& s : report.samples) exhausted = exhausted || s.budget_exhausted;
  o.code = exhausted ? kExitBudget : kExitOk;
  o.summary = to_string(report.verdict_hint) + ": max ratio lower bound " + human(report.max_ratio_lo) + " over " +
              std::to_string(report.samples.size()) + " windows";
  if (!report.witness_family.empty()) o.summary += " (witness family " + report.witness_family + ")";
  if (exhausted) o.summary += "; sample budget exhausted";
  o.details = growth_summary_json(report);
  return o;
}

Outcome run_cluster(const SetArgs& sa, const WindowArgs& wa, const Common& c, double eps, int d,
                    const std::string& center) {
  const SetSpec set = build_set(sa);
  const fs::path out(c.out);
  Outcome o;
  if (!center.empty()) {
    const auto v = parse_numbers(center, 2, "--center");
    const auto w = cluster_count(set, {v[0], v[1]}, eps);
    write_file(out / "witness.json", dump(to_json(w)));
    o.summary = "count " + std::to_string(w.count) + " at (" + human(w.center.re) + ", " + human(w.center.im) + ")";
    o.details = to_json(w);
    return o;
  }
  if (const auto w = single_window(wa)) {
    const auto best = max_cluster(set, *w, eps, c.threads);
    write_file(out / "witness.json", dump(to_json(best)));
    o.summary = "max count " + std::to_string(best.count) + " at (" + human(best.center.re) + ", " +
                human(best.center.im) + ")";
    o.details = to_json(best);
    return o;
  }
  if (!wa.schedule.empty()) throw InvalidArgument("cluster scans strips; --schedule is not used");
  int max_windows = 16;
  if (c.budget) {
    if (!(*c.budget >= 1.0) || *c.budget > 60.0) throw InvalidArgument("--budget must be in [1, 60] strips");
    max_windows = static_cast<int>(*c.budget);
  }
  const auto scan = theorem_b_scan(set, eps, d, max_windows, c.threads);
  write_file(out / "witness.json", dump(to_json(scan)));
  if (c.format == "json") {
    write_file(out / "trace.json", dump(to_json(scan)["trace"]));
  } else {
    write_file(out / "trace.csv", scan_trace_csv(scan.trace));
  }
  if (c.svg) {
    PlotSpec plot{"Cluster scan", "strip half-height", "best count", true, {}};
    PlotSeries s{"best count", {}};
    for (const auto& t : scan.trace) s.points.emplace_back(t.height, t.best_count);
    plot.series.push_back(s);
    write_file(out / "trace.svg", line_plot_svg(plot));
  }
  o.code = scan.found ? kExitOk : kExitBudget;
  o.summary = std::string(scan.found ? "witness" : "exhausted") + ": count " + std::to_string(scan.witness.count) +
              " at (" + human(scan.witness.center.re) + ", " + human(scan.witness.center.im) + "), eps " +
              human(eps) + ", d " + std::to_string(d);
  o.details = Json{{"status", scan.found ? "witness" : "exhausted"}, {"witness", to_json(scan.witness)}};
  return o;
}

struct ModulusArgs {
  std::vector<double> annulus;
  std::vector<double> rectangle;
  std::vector<long long> intervals;
  std::string problem;
  double h = 0.01;
  double pad = 8.0;
};

Outcome run_modulus(const ModulusArgs& m, const Common& c) {
  const int sources = !m.annulus.empty() + !m.rectangle.empty() + !m.intervals.empty() + !m.problem.empty();
  if (sources != 1) throw InvalidArgument("give exactly one of --annulus, --rectangle, --intervals, --problem");
  if (!(m.h > 0.0)) throw InvalidArgument("--h must be positive");
  std::optional<CondenserProblem> problem;
  Json bounds = Json::object();
  if (!m.annulus.empty()) {
    problem = annulus_problem(m.annulus[0], m.annulus[1], m.h);
    bounds["closed_form"] = 2.0 * std::numbers::pi / std::log(m.annulus[1] / m.annulus[0]);
  } else if (!m.rectangle.empty()) {
    problem = rectangle_problem(m.rectangle[0], m.rectangle[1], m.h);
    bounds["closed_form"] = m.rectangle[1] / m.rectangle[0];
  } else if (!m.intervals.empty()) {
    const long long n = m.intervals[0], mm = m.intervals[1], d = m.intervals[2];
    problem = interval_problem(n, mm, d, m.h, m.pad);
    bounds["vuorinen_lower"] = vuorinen_lower(problem->e, problem->f);
    bounds["ring_upper"] = ring_upper(n, mm, d);
  } else {
    Json j;
    try {
      j = Json::parse(read_file(m.problem));
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(m.problem + ": " + e.what());
    }
    problem = condenser_problem_from_json(j);
  }
  SolverOptions options;
  if (c.budget) {
    if (!(*c.budget >= 1.0)) throw InvalidArgument("--budget must be at least 1");
    options.max_iterations = static_cast<std::int64_t>(*c.budget);
  }
  const CertifiedEstimate est = condenser_modulus(*problem, options);
  const fs::path out(c.out);
  write_file(out / "problem.json", dump(to_json(*problem)));
  Json result = to_json(est);
  result["bounds"] = bounds;
  if (c.format == "json") write_file(out / "modulus.json", dump(result));
  else write_file(out / "modulus.csv", modulus_results_csv(est));
  if (c.svg) {
    PlotSpec plot{"Condenser modulus", "grid spacing h", "modulus", true, {}};
    plot.series.push_back({"discrete energy", {{est.coarse.h, est.coarse.value}, {est.fine.h, est.fine.value}}});
    plot.series.push_back({"extrapolated", {{est.fine.h, est.extrapolated}}});
    write_file(out / "modulus.svg", line_plot_svg(plot));
  }
  Outcome o;
  o.summary = "modulus " + human(est.value) + " at h = " + human(est.grid_spacing) + ", extrapolated " +
              human(est.extrapolated);
  o.details = result;
  return o;
}

struct QcArgs {
  std::string map_json;
  std::optional<double> stretch;
  std::vector<double> affine;
  std::string square;
  double h = 0.05;
  std::vector<long long> lemma3;
  std::optional<double> k;
  std::vector<double> search;
};

MapSpec build_map(const QcArgs& q) {
  const int sources = !q.map_json.empty() + q.stretch.has_value() + !q.affine.empty();
  if (sources > 1) throw InvalidArgument("give at most one of --map, --stretch, --affine");
  if (!q.map_json.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(q.map_json));
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(q.map_json + ": " + e.what());
    }
    return map_spec_from_json(j);
  }
  if (q.stretch) return MapSpec::horizontal_stretch(*q.stretch);
  if (!q.affine.empty()) return MapSpec::affine({q.affine[0], q.affine[1]}, {q.affine[2], q.affine[3]});
  return MapSpec::identity();
}

Outcome run_qcmap(const QcArgs& q, const Common& c) {
  const MapSpec map = build_map(q);
  Json report{{"map", to_json(map)}, {"exact_dilatation", map.exact_dilatation()}};
  std::vector<std::string> parts{"map " + map.name() + ", exact K " + human(map.exact_dilatation())};
  if (!q.square.empty()) {
    const auto v = parse_numbers(q.square, 3, "--square");
    const double est = dilatation_estimate(map, Window::square({v[0], v[1]}, v[2]), q.h);
    report["dilatation_estimate"] = est;
    parts.push_back("estimated K " + human(est));
  }
  if (!q.lemma3.empty()) {
    const double k = q.k.value_or(map.exact_dilatation());
    const auto r = lemma3_check(map, k, q.lemma3[0], q.lemma3[1], q.lemma3[2]);
    report["lemma3"] = Json{{"n", q.lemma3[0]}, {"m", q.lemma3[1]}, {"d", q.lemma3[2]}, {"K", k},
                            {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
    parts.push_back(std::string("lemma 3 ") + (r.holds ? "holds" : "violated") + " (" + human(r.lhs) +
                    " <= " + human(r.rhs) + ")");
  }
  Outcome o;
  if (!q.search.empty()) {
    const auto d = static_cast<long long>(q.search[0]);
    if (static_cast<double>(d) != q.search[0]) throw InvalidArgument("--search d must be an integer");
    const auto lo = static_cast<long long>(q.search[2]);
    const auto hi = static_cast<long long>(q.search[3]);
    const auto n = small_diameter_search(map, d, q.search[1], lo, hi);
    report["small_diameter"] = Json{{"d", d}, {"eps", q.search[1]}, {"range", Json::array({lo, hi})},
                                    {"n", n ? Json(*n) : Json(nullptr)}};
    parts.push_back(n ? "small-diameter interval at n = " + std::to_string(*n) : "no small-diameter interval");
    if (!n) o.code = kExitBudget;
  }
  write_file(fs::path(c.out) / "qcmap.json", dump(report));
  for (std::size_t i = 0; i < parts.size(); ++i) o.summary += (i ? "; " : "") + parts[i];
  o.details = report;
  return o;
}

Outcome run_classify(const SetArgs& sa, const Common& c) {
  const SetSpec set = build_set(sa);
  VerdictOptions options;
  options.threads = c.threads;
  if (c.budget) {
    if (!(*c.budget >= 1.0)) throw InvalidArgument("--budget must be at least 1");
    options.sample_budget = static_cast<std::uint64_t>(*c.budget);
  }
  const Verdict v = classify(set, options);
  write_file(fs::path(c.out) / "verdict.json", dump(to_json(v)));
  Outcome o;
  o.summary = to_string(v.classification);
  if (v.classification == Classification::ObstructedByA) {
    o.summary += " (Corollary: " + v.registered_example + ")";
  } else if (v.classification == Classification::ObstructedByB) {
    o.summary += " (Example: " + v.registered_example + ")";
  } else if (!v.diagnostics.empty()) {
    o.summary += " (" + std::to_string(v.diagnostics.size()) + " diagnostics)";
  }
  o.details = Json{{"classification", to_string(v.classification)},
                   {"registered_example", v.registered_example.empty() ? Json(nullptr) : Json(v.registered_example)}};
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-set tameness obstructions: covering ratios, cluster scans, condenser moduli"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Common common;
  SetArgs set_args;
  WindowArgs window_args;

  auto* generate = app.add_subcommand("generate", "enumerate set points in a window");
  add_common(generate, common);
  add_set(generate, set_args);
  add_windows(generate, window_args);

  double tol = 1e-3;
  bool relative = false;
  auto* covering = app.add_subcommand("covering", "Theorem A ratios over a window schedule");
  add_common(covering, common);
  add_set(covering, set_args);
  add_windows(covering, window_args);
  covering->add_option("--tol", tol, "covering-radius tolerance")->check(CLI::PositiveNumber);
  covering->add_flag("--relative-tol", relative, "scale the tolerance by each window's extent");

  double eps = 0.5;
  int d = 2;
  std::string center;
  auto* cluster = app.add_subcommand("cluster", "cluster counts and the Theorem B strip scan");
  add_common(cluster, common);
  add_set(cluster, set_args);
  add_windows(cluster, window_args);
  cluster->add_option("--eps", eps, "disk radius")->check(CLI::PositiveNumber);
  cluster->add_option("--d", d, "required count")->check(CLI::PositiveNumber);
  cluster->add_option("--center", center, "count around one set point cx,cy");

  ModulusArgs mod;
  auto* modulus = app.add_subcommand("modulus", "condenser modulus by finite differences");
  add_common(modulus, common);
  modulus->add_option("--annulus", mod.annulus, "inner and outer radius")->expected(2);
  modulus->add_option("--rectangle", mod.rectangle, "length and width")->expected(2);
  modulus->add_option("--intervals", mod.intervals, "n m d for [n-d, n] and [m, m+d]")->expected(3);
  modulus->add_option("--problem", mod.problem, "condenser problem JSON");
  modulus->add_option("--h", mod.h, "grid spacing")->check(CLI::PositiveNumber);
  modulus->add_option("--pad", mod.pad, "domain side over configuration span for --intervals");

  QcArgs qc;
  auto* qcmap = app.add_subcommand("qcmap-check", "dilatation, Lemma 3 and small-diameter checks");
  add_common(qcmap, common);
  qcmap->add_option("--map", qc.map_json, "MapSpec JSON file");
  qcmap->add_option("--stretch", qc.stretch, "horizontal stretch factor K");
  qcmap->add_option("--affine", qc.affine, "a_re a_im b_re b_im")->expected(4);
  qcmap->add_option("--square", qc.square, "window cx,cy,r for the dilatation estimate");
  qcmap->add_option("--h", qc.h, "dilatation sample spacing")->check(CLI::PositiveNumber);
  qcmap->add_option("--lemma3", qc.lemma3, "n m d")->expected(3);
  qcmap->add_option("--K", qc.k, "dilatation constant for Lemma 3 (default: exact)");
  qcmap->add_option("--search", qc.search, "d eps lo hi")->expected(4);

  auto* classify_cmd = app.add_subcommand("classify", "combine Theorem A and Theorem B evidence");
  add_common(classify_cmd, common);
  add_set(classify_cmd, set_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  std::string command;
  try {
    Outcome outcome;
    if (generate->parsed()) {
      command = "generate";
      outcome = run_generate(set_args, window_args, common);
    } else if (covering->parsed()) {
      command = "covering";
      outcome = run_covering(set_args, window_args, common, tol, relative);
    } else if (cluster->parsed()) {
      command = "cluster";
      outcome = run_cluster(set_args, window_args, common, eps, d, center);
    } else if (modulus->parsed()) {
      command = "modulus";
      outcome = run_modulus(mod, common);
    } else if (qcmap->parsed()) {
      command = "qcmap-check";
      outcome = run_qcmap(qc, common);
    } else {
      command = "classify";
      outcome = run_classify(set_args, common);
    }
    finish(command, common, outcome);
    return outcome.code;
  } catch (const Error& e) {
    int code = kExitBadInput;
    if (dynamic_cast<const IoError*>(&e)) code = kExitIo;
    if (dynamic_cast<const BudgetExhausted*>(&e)) code = kExitBudget;
    std::cerr << "error: " << e.what() << "\n";
    try {
      Json summary{{"command", command}, {"exit_code", code}, {"summary", std::string("error: ") + e.what()}};
      write_file(fs::path(common.out) / "summary.json", dump(summary));
    } catch (const Error&) {
    }
    return code;
  }
}
