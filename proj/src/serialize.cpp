#include "qctame/serialize.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "qctame/error.hpp"
#include "qctame/format.hpp"

namespace qctame {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InvalidArgument(what + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw InvalidArgument(what + ": unknown key '" + key + "'");
  }
}

double number(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InvalidArgument(what + ": missing '" + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number()) throw InvalidArgument(what + ": '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

Json pair(double a, double b) { return Json::array({a, b}); }
Json pair(Point p) { return pair(p.re, p.im); }
Json pair(std::complex<double> z) { return pair(z.real(), z.imag()); }

std::complex<double> complex_from(const Json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InvalidArgument(what + " must be a [re, im] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Point point_from(const Json& v, const std::string& what) { return Point(complex_from(v, what)); }

std::vector<double> numbers_from(const Json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidArgument(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidArgument(what + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Json interval(const std::optional<CertifiedInterval>& iv) {
  if (!iv) return nullptr;
  return pair(iv->lo, iv->hi);
}

Json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

Json points(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const Point& p : pts) out.push_back(pair(p));
  return out;
}

Json continuum(const Continuum& c) { return points(c.vertices()); }

Continuum continuum_from(const Json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidArgument(what + " must be an array of [re, im] pairs");
  std::vector<Point> pts;
  for (const auto& p : v) pts.push_back(point_from(p, what));
  return Continuum(std::move(pts));
}

Json grid_solve(const GridSolve& g) {
  return Json{{"h", g.h}, {"value", g.value}, {"residual", g.residual},
              {"iterations", g.iterations}, {"unknowns", g.unknowns}};
}

}  // namespace

Json to_json(const MapSpec& map) {
  Json params = Json::object();
  if (const auto* a = std::get_if<MapSpec::Affine>(&map.kind())) {
    params["a"] = pair(a->a);
    params["b"] = pair(a->b);
  } else if (const auto* s = std::get_if<MapSpec::HorizontalStretch>(&map.kind())) {
    params["k"] = s->k;
  } else if (const auto* p = std::get_if<MapSpec::PiecewiseAffine>(&map.kind())) {
    params["breakpoints"] = p->breakpoints;
    params["slopes"] = p->slopes;
  }
  return Json{{"kind", map.name()}, {"params", params}};
}

MapSpec map_spec_from_json(const Json& j) {
  require_keys(j, {"kind", "params"}, "map");
  if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidArgument("map: missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  const Json params = j.value("params", Json::object());
  if (kind == "identity") {
    require_keys(params, {}, "identity params");
    return MapSpec::identity();
  }
  if (kind == "affine") {
    require_keys(params, {"a", "b"}, "affine params");
    const auto a = params.contains("a") ? complex_from(params["a"], "affine a") : std::complex<double>(1.0, 0.0);
    const auto b = params.contains("b") ? complex_from(params["b"], "affine b") : std::complex<double>(0.0, 0.0);
    return MapSpec::affine(a, b);
  }
  if (kind == "stretch") {
    require_keys(params, {"k"}, "stretch params");
    return MapSpec::horizontal_stretch(number(params, "k", "stretch params"));
  }
  if (kind == "piecewise") {
    require_keys(params, {"breakpoints", "slopes"}, "piecewise params");
    if (!params.contains("breakpoints") || !params.contains("slopes")) {
      throw InvalidArgument("piecewise params: need 'breakpoints' and 'slopes'");
    }
    return MapSpec::piecewise_affine(numbers_from(params["breakpoints"], "breakpoints"),
                                     numbers_from(params["slopes"], "slopes"));
  }
  throw InvalidArgument("unknown map kind '" + kind + "'");
}

Json to_json(const SetSpec& set) {
  Json params = Json::object();
  if (const auto* as = std::get_if<SetSpec::FamilyAs>(&set.kind())) {
    params["s"] = as->s;
  } else if (const auto* ap = std::get_if<SetSpec::FamilyAsPrime>(&set.kind())) {
    params["s"] = ap->s;
  } else if (const auto* ex = std::get_if<SetSpec::Explicit>(&set.kind())) {
    params["points"] = points(ex->points);
  } else if (const auto* mp = std::get_if<SetSpec::Mapped>(&set.kind())) {
    params["base"] = to_json(*mp->base);
    params["map"] = to_json(mp->map);
  }
  Json out{{"kind", set.name()}, {"params", params}};
  out["period"] = set.period() ? pair(*set.period()) : Json(nullptr);
  out["infinite_punctures"] = set.infinite_punctures();
  return out;
}

SetSpec set_spec_from_json(const Json& j) {
  require_keys(j, {"kind", "params", "period", "infinite_punctures"}, "set");
  if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidArgument("set: missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  const Json params = j.value("params", Json::object());

  auto base = [&]() -> SetSpec {
    if (kind == "as" || kind == "asprime") {
      require_keys(params, {"s"}, kind + " params");
      const double s = number(params, "s", kind + " params");
      return kind == "as" ? SetSpec::family_as(s) : SetSpec::family_as_prime(s);
    }
    if (kind == "explicit") {
      require_keys(params, {"points"}, "explicit params");
      if (!params.contains("points") || !params["points"].is_array()) {
        throw InvalidArgument("explicit params: need 'points'");
      }
      std::vector<Point> pts;
      for (const auto& p : params["points"]) pts.push_back(point_from(p, "explicit point"));
      return SetSpec::explicit_points(std::move(pts));
    }
    if (kind == "mapped") {
      require_keys(params, {"base", "map"}, "mapped params");
      if (!params.contains("base") || !params.contains("map")) {
        throw InvalidArgument("mapped params: need 'base' and 'map'");
      }
      return SetSpec::mapped(set_spec_from_json(params["base"]), map_spec_from_json(params["map"]));
    }
    require_keys(params, {}, kind + " params");
    if (kind == "integers") return SetSpec::integers();
    if (kind == "gaussint") return SetSpec::gauss_int();
    if (kind == "geometric") return SetSpec::geometric();
    if (kind == "shrinkingrings") return SetSpec::shrinking_rings();
    throw InvalidArgument("unknown set kind '" + kind + "'");
  };

  SetSpec set = base();
  if (j.contains("period")) {
    std::optional<std::complex<double>> period;
    if (!j["period"].is_null()) period = complex_from(j["period"], "period");
    if (period != set.period()) set = set.with_period(period);
  }
  if (j.contains("infinite_punctures")) {
    if (!j["infinite_punctures"].is_boolean()) throw InvalidArgument("infinite_punctures must be a boolean");
    const bool flag = j["infinite_punctures"].get<bool>();
    if (flag != set.infinite_punctures()) set = set.with_infinite_punctures(flag);
  }
  return set;
}

Json to_json(const Window& window) {
  return Json{{"shape", to_string(window.shape())}, {"center", pair(window.center())},
              {"extent", window.extent()}};
}

Window window_from_json(const Json& j) {
  require_keys(j, {"shape", "center", "extent"}, "window");
  if (!j.contains("shape") || !j["shape"].is_string()) throw InvalidArgument("window: missing 'shape'");
  if (!j.contains("center")) throw InvalidArgument("window: missing 'center'");
  return Window(window_shape_from_string(j["shape"].get<std::string>()),
                point_from(j["center"], "window center"), number(j, "extent", "window"));
}

Json to_json(const ClusterWitness& w) {
  return Json{{"center", pair(w.center)}, {"epsilon", w.epsilon}, {"count", w.count},
              {"members", points(w.members)}};
}

Json to_json(const TheoremBScan& scan) {
  Json trace = Json::array();
  for (const auto& t : scan.trace) {
    trace.push_back(Json{{"index", t.index}, {"height", t.height}, {"best_count", t.best_count}});
  }
  return Json{{"status", scan.found ? "witness" : "exhausted"},
              {"witness", to_json(scan.witness)},
              {"trace", trace}};
}

Json to_json(const GrowthReport& report) {
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    Json row = to_json(s.window);
    row["covering"] = interval(s.covering);
    row["ratio"] = interval(s.ratio);
    row["closed_form_ratio"] = optional_number(s.closed_form_ratio);
    if (!s.error.empty()) row["error"] = s.error;
    samples.push_back(std::move(row));
  }
  Json out = growth_summary_json(report);
  out["bound"] = report.bound;
  out["samples"] = samples;
  return out;
}

Json growth_summary_json(const GrowthReport& report) {
  return Json{{"max_ratio_lo", report.max_ratio_lo},
              {"verdict_hint", to_string(report.verdict_hint)},
              {"witness_family", report.witness_family.empty() ? Json(nullptr) : Json(report.witness_family)}};
}

Json to_json(const Verdict& v) {
  Json out{{"classification", to_string(v.classification)},
           {"registered_example", v.registered_example.empty() ? Json(nullptr) : Json(v.registered_example)}};
  out["theorem_a"] = v.theorem_a ? to_json(*v.theorem_a) : Json(nullptr);
  if (v.theorem_b) {
    Json b = to_json(*v.theorem_b);
    b["eps"] = v.cluster_eps;
    b["d"] = v.cluster_d;
    out["theorem_b"] = b;
  } else {
    out["theorem_b"] = Json{{"status", "skipped"}};
  }
  out["diagnostics"] = v.diagnostics;
  return out;
}

Json to_json(const CondenserProblem& p) {
  return Json{{"domain", Json::array({p.domain.x0, p.domain.x1, p.domain.y0, p.domain.y1})},
              {"e", continuum(p.e)},
              {"f", continuum(p.f)},
              {"grid_spacing", p.grid_spacing}};
}

CondenserProblem condenser_problem_from_json(const Json& j) {
  require_keys(j, {"domain", "e", "f", "grid_spacing"}, "condenser problem");
  for (const char* key : {"domain", "e", "f"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("condenser problem: missing '") + key + "'");
  }
  const auto d = numbers_from(j["domain"], "domain");
  if (d.size() != 4) throw InvalidArgument("domain must be [x0, x1, y0, y1]");
  CondenserProblem p{Box{d[0], d[1], d[2], d[3]}, continuum_from(j["e"], "e"), continuum_from(j["f"], "f"),
                     number(j, "grid_spacing", "condenser problem")};
  p.validate();
  return p;
}

Json to_json(const CertifiedEstimate& e) {
  return Json{{"value", e.value}, {"grid_spacing", e.grid_spacing}, {"extrapolated", e.extrapolated},
              {"fine", grid_solve(e.fine)}, {"coarse", grid_solve(e.coarse)}};
}

std::string growth_report_csv(const GrowthReport& report) {
  std::string out = "window_shape,center_re,center_im,extent,ratio_lo,ratio_hi\n";
  for (const auto& s : report.samples) {
    out += to_string(s.window.shape()) + "," + format_double(s.window.center().re) + "," +
           format_double(s.window.center().im) + "," + format_double(s.window.extent()) + ",";
    if (s.ratio) out += format_double(s.ratio->lo) + "," + format_double(s.ratio->hi);
    else out += ",";
    out += "\n";
  }
  return out;
}

std::string scan_trace_csv(const std::vector<StripTrace>& trace) {
  std::string out = "index,height,best_count\n";
  for (const auto& t : trace) {
    out += std::to_string(t.index) + "," + format_double(t.height) + "," + std::to_string(t.best_count) + "\n";
  }
  return out;
}

std::string modulus_results_csv(const CertifiedEstimate& e) {
  std::string out = "h,value,residual,iterations,extrapolated\n";
  for (const GridSolve* g : {&e.coarse, &e.fine}) {
    out += format_double(g->h) + "," + format_double(g->value) + "," + format_double(g->residual) + "," +
           std::to_string(g->iterations) + "," + format_double(e.extrapolated) + "\n";
  }
  return out;
}

std::vector<Window> parse_schedule_csv(const std::string& text, const std::string& source) {
  std::vector<Window> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("shape", 0) == 0) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    const std::string where = source + ": malformed row at line " + std::to_string(line_no);
    if (fields.size() != 4) throw InvalidArgument(where);
    double v[3];
    for (int k = 0; k < 3; ++k) {
      const std::string& f = fields[k + 1];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v[k]);
      if (ec != std::errc() || ptr != f.data() + f.size()) throw InvalidArgument(where);
    }
    try {
      out.emplace_back(window_shape_from_string(fields[0]), Point{v[0], v[1]}, v[2]);
    } catch (const InvalidArgument&) {
      throw InvalidArgument(where);
    }
  }
  if (out.empty()) throw InvalidArgument(source + ": no windows");
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qctame
