// Python bindings. Structured values cross the boundary as JSON text; the
// Python package converts them to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qctame/clustering.hpp"
#include "qctame/covering.hpp"
#include "qctame/error.hpp"
#include "qctame/modulus.hpp"
#include "qctame/pointsets.hpp"
#include "qctame/qcmaps.hpp"
#include "qctame/serialize.hpp"
#include "qctame/verdict.hpp"

namespace py = pybind11;
using namespace qctame;

namespace {

using PointList = std::vector<std::pair<double, double>>;

SetSpec set_from(const std::string& text) { return set_spec_from_json(Json::parse(text)); }
Window window_from(const std::string& text) { return window_from_json(Json::parse(text)); }
MapSpec map_from(const std::string& text) { return map_spec_from_json(Json::parse(text)); }

Continuum continuum_from(const PointList& pts) {
  std::vector<Point> v;
  for (const auto& [re, im] : pts) v.push_back({re, im});
  return Continuum(std::move(v));
}

std::pair<double, double> pair_of(const CertifiedInterval& iv) { return {iv.lo, iv.hi}; }

}  // namespace

PYBIND11_MODULE(_qctame, m) {
  m.doc() = "qctame native core";
  static py::exception<BudgetExhausted> budget_error(m, "BudgetExhausted", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExhausted& e) {
      py::set_error(budget_error, e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("canonical_set", [](const std::string& s) { return to_json(set_from(s)).dump(); });
  m.def("enumerate", [](const std::string& s, const std::string& w) {
    PointList out;
    for (const Point& p : enumerate(set_from(s), window_from(w))) out.emplace_back(p.re, p.im);
    return out;
  });
  m.def("nearest_distance", [](const std::string& s, double re, double im) {
    return nearest_distance(set_from(s), {re, im});
  });
  m.def("normalize_period", [](const std::string& s) { return to_json(normalize_period(set_from(s))).dump(); });

  m.def("covering_radius", [](const std::string& s, const std::string& w, double tol, std::uint64_t budget) {
    return pair_of(covering_radius(set_from(s), window_from(w), tol, CoveringOptions{budget}));
  });
  m.def("theorem_a_ratio", [](const std::string& s, const std::string& w, double tol, std::uint64_t budget) {
    return pair_of(theorem_a_ratio(set_from(s), window_from(w), tol, CoveringOptions{budget}));
  });
  m.def("ratio_scan", [](const std::string& s, const std::string& windows, double tol, bool relative,
                         unsigned threads) {
    const SetSpec set = set_from(s);
    std::vector<Window> schedule;
    const Json list = Json::parse(windows);
    if (list.is_null()) {
      schedule = default_schedule(set);
    } else {
      for (const auto& w : list) schedule.push_back(window_from_json(w));
    }
    RatioScanOptions options;
    options.tol_relative_to_extent = relative;
    options.threads = threads;
    return to_json(ratio_scan(set, schedule, tol, options)).dump();
  });

  m.def("cluster_count", [](const std::string& s, double re, double im, double eps) {
    return to_json(cluster_count(set_from(s), {re, im}, eps)).dump();
  });
  m.def("max_cluster", [](const std::string& s, const std::string& w, double eps, unsigned threads) {
    return to_json(max_cluster(set_from(s), window_from(w), eps, threads)).dump();
  });
  m.def("theorem_b_scan", [](const std::string& s, double eps, int d, int max_windows, unsigned threads) {
    return to_json(theorem_b_scan(set_from(s), eps, d, max_windows, threads)).dump();
  });

  m.def("vuorinen_lower", [](const PointList& e, const PointList& f) {
    return vuorinen_lower(continuum_from(e), continuum_from(f));
  });
  m.def("ring_upper", &ring_upper);
  m.def("lemma3_rhs", &lemma3_rhs);
  m.def("annulus_problem", [](double inner, double outer, double h) {
    return to_json(annulus_problem(inner, outer, h)).dump();
  });
  m.def("rectangle_problem", [](double length, double width, double h) {
    return to_json(rectangle_problem(length, width, h)).dump();
  });
  m.def("interval_problem", [](long long n, long long mm, long long d, double h, double pad) {
    return to_json(interval_problem(n, mm, d, h, pad)).dump();
  });
  m.def("condenser_modulus", [](const std::string& problem) {
    return to_json(condenser_modulus(condenser_problem_from_json(Json::parse(problem)))).dump();
  });

  m.def("dilatation_estimate", [](const std::string& map, const std::string& w, double h) {
    return dilatation_estimate(map_from(map), window_from(w), h);
  });
  m.def("lemma3_check", [](const std::string& map, double k, long long n, long long mm, long long d) {
    const auto r = lemma3_check(map_from(map), k, n, mm, d);
    return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}}.dump();
  });
  m.def("small_diameter_search", [](const std::string& map, long long d, double eps, long long lo, long long hi) {
    return small_diameter_search(map_from(map), d, eps, lo, hi);
  });

  m.def("classify", [](const std::string& s, unsigned threads) {
    VerdictOptions options;
    options.threads = threads;
    return to_json(classify(set_from(s), options)).dump();
  });
}
