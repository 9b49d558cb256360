#include "qctame/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qctame/format.hpp"
#include "qctame/parallel.hpp"
#include "qctame/pointsets.hpp"

namespace qctame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

double round_down(double x) { return std::nextafter(x, -kInf); }
double round_up(double x) { return std::nextafter(x, kInf); }

struct Cell {
  double cx;
  double cy;
  double dist;
};

}  // namespace

CertifiedInterval::CertifiedInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("certified interval needs finite lo <= hi");
  }
}

RefinementBudgetExhausted::RefinementBudgetExhausted(CertifiedInterval best_, std::uint64_t samples_)
    : BudgetExhausted("refinement budget exhausted after " + std::to_string(samples_) +
                      " samples; best interval [" + format_double(best_.lo) + ", " +
                      format_double(best_.hi) + "]"),
      best(best_),
      samples(samples_) {}

CertifiedInterval covering_radius(const SetSpec& set, const Window& window, double tol,
                                  const CoveringOptions& options, CoveringStats* stats) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  const Point c = window.center();
  const double r = window.extent();
  double h = r / 8.0;
  const int n0 = 16;

  std::vector<Cell> live;
  std::uint64_t samples = 0;
  double lo = 0.0;
  bool have_lo = false;

  auto sample_cells = [&](std::vector<Cell>& cells) {
    for (Cell& cell : cells) {
      cell.dist = nearest_distance(set, {cell.cx, cell.cy});
      if (window.contains({cell.cx, cell.cy}) && (!have_lo || cell.dist > lo)) {
        lo = cell.dist;
        have_lo = true;
      }
    }
    samples += cells.size();
  };

  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n0; ++j) {
      const double x0 = c.re - r + i * h;
      const double y0 = c.im - r + j * h;
      if (window.intersects({x0, x0 + h, y0, y0 + h})) {
        live.push_back({x0 + h / 2.0, y0 + h / 2.0, 0.0});
      }
    }
  }
  sample_cells(live);

  int level = 0;
  for (;;) {
    const double half_diag = h * kHalfSqrt2;
    double hi = lo;
    for (const Cell& cell : live) hi = std::max(hi, cell.dist + half_diag);
    const CertifiedInterval current(round_down(lo), round_up(round_up(hi)));
    if (current.width() <= tol) {
      if (stats) *stats = {samples, level};
      return current;
    }

    std::vector<Cell> next;
    next.reserve(live.size() * 2);
    const double child = h / 2.0;
    for (const Cell& cell : live) {
      if (cell.dist + half_diag <= lo) continue;
      for (int dx = 0; dx < 2; ++dx) {
        for (int dy = 0; dy < 2; ++dy) {
          const double x0 = cell.cx - h / 2.0 + dx * child;
          const double y0 = cell.cy - h / 2.0 + dy * child;
          if (window.intersects({x0, x0 + child, y0, y0 + child})) {
            next.push_back({x0 + child / 2.0, y0 + child / 2.0, 0.0});
          }
        }
      }
    }
    if (samples + next.size() > options.sample_budget) {
      throw RefinementBudgetExhausted(current, samples);
    }
    sample_cells(next);
    live = std::move(next);
    h = child;
    ++level;
  }
}

CertifiedInterval theorem_a_ratio(const SetSpec& set, const Window& window, double tol,
                                  const CoveringOptions& options) {
  const CertifiedInterval d = covering_radius(set, window, tol, options);
  if (!(d.lo > 0.0)) {
    throw InvalidArgument("covering radius lower bound is zero; ratio undefined");
  }
  const double r = window.extent();
  return {round_down(r / d.hi), round_up(r / d.lo)};
}

// ---------------------------------------------------------------------------
// Analytic witnesses

namespace {

std::optional<int> integer_index(double extent, double s) {
  const double n = std::round(std::pow(extent, 1.0 / s));
  if (n < 1.0) return std::nullopt;
  if (std::abs(std::pow(n, s) - extent) > 1e-12 * extent) return std::nullopt;
  return static_cast<int>(n);
}

double top_gap_radius(int n, double s) {
  const double gap = std::pow(n, s) - std::pow(n - 1, s);
  return std::sqrt(gap * gap + 1.0) / 2.0;
}

}  // namespace

Window AnalyticWitness::window(int n) const {
  switch (schedule) {
    case Schedule::GaussUnitCells:
    case Schedule::CenteredUnitBand:
      return Window::square({0.0, 0.0}, n);
    case Schedule::CenteredTopGap:
      return Window::square({0.0, 0.0}, std::pow(n, s));
    case Schedule::UpperHalfSquares: {
      const double half = std::pow(n, s) / 2.0;
      return Window::square({0.0, half}, half);
    }
  }
  return Window::square({0.0, 0.0}, n);
}

std::optional<double> AnalyticWitness::closed_form_covering(const Window& w) const {
  if (w.shape() != WindowShape::Square) return std::nullopt;
  const Point c = w.center();
  const double e = w.extent();
  switch (schedule) {
    case Schedule::GaussUnitCells:
      // A square of half-side >= 1 holds a whole unit cell and its centre.
      if (e >= 1.0) return kHalfSqrt2;
      return std::nullopt;
    case Schedule::CenteredUnitBand:
      if (c == Point{0.0, 0.0} && e > 1.0) return kHalfSqrt2;
      return std::nullopt;
    case Schedule::CenteredTopGap: {
      if (!(c == Point{0.0, 0.0})) return std::nullopt;
      const auto n = integer_index(e, s);
      if (!n) return std::nullopt;
      return top_gap_radius(*n, s);
    }
    case Schedule::UpperHalfSquares: {
      if (c.re != 0.0 || c.im != e) return std::nullopt;
      const auto n = integer_index(2.0 * e, s);
      if (!n) return std::nullopt;
      // For s <= 1 the widest gap is the first one, [0, 1].
      return s > 1.0 ? top_gap_radius(*n, s) : kHalfSqrt2;
    }
  }
  return std::nullopt;
}

std::optional<double> AnalyticWitness::closed_form_ratio(const Window& w) const {
  const auto d = closed_form_covering(w);
  if (!d) return std::nullopt;
  return w.extent() / *d;
}

std::optional<AnalyticWitness> analytic_witness(const SetSpec& set) {
  using S = AnalyticWitness::Schedule;
  const auto& kind = set.kind();
  if (std::holds_alternative<SetSpec::GaussInt>(kind)) {
    return AnalyticWitness{"gaussint", "Z+iZ not tame", S::GaussUnitCells, 1.0};
  }
  if (const auto* as = std::get_if<SetSpec::FamilyAs>(&kind)) {
    if (as->s <= 1.0) {
      return AnalyticWitness{"as", "A_s not tame (s <= 1)", S::CenteredUnitBand, as->s};
    }
    return AnalyticWitness{"as", "A_s not tame (s > 1)", S::CenteredTopGap, as->s};
  }
  if (const auto* ap = std::get_if<SetSpec::FamilyAsPrime>(&kind)) {
    return AnalyticWitness{"asprime", "A'_s not tame", S::UpperHalfSquares, ap->s};
  }
  return std::nullopt;
}

std::string to_string(GrowthHint hint) {
  switch (hint) {
    case GrowthHint::Divergent: return "Divergent";
    case GrowthHint::Bounded: return "Bounded";
    case GrowthHint::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

GrowthReport ratio_scan(const SetSpec& set, const std::vector<Window>& schedule, double tol,
                        const RatioScanOptions& options) {
  if (schedule.empty()) throw InvalidArgument("ratio scan needs a nonempty schedule");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  const auto witness = analytic_witness(set);
  GrowthReport report;
  report.witness_family = witness ? witness->family : "";
  report.samples.reserve(schedule.size());
  for (const Window& w : schedule) report.samples.push_back({w, {}, {}, {}, {}});

  auto window_tol = [&](const Window& w) {
    return options.tol_relative_to_extent ? tol * std::max(1.0, w.extent()) : tol;
  };

  parallel_for(schedule.size(), options.threads, [&](std::size_t i) {
    RatioSample& sample = report.samples[i];
    try {
      const double t = window_tol(sample.window);
      const CertifiedInterval d = covering_radius(set, sample.window, t, options.covering);
      sample.covering = d;
      if (!(d.lo > 0.0)) throw InvalidArgument("covering radius lower bound is zero");
      const double r = sample.window.extent();
      sample.ratio = CertifiedInterval(round_down(r / d.hi), round_up(r / d.lo));
    } catch (const RefinementBudgetExhausted& e) {
      sample.covering = e.best;
      sample.error = e.what();
      sample.budget_exhausted = true;
    } catch (const Error& e) {
      sample.error = e.what();
    }
    if (witness) sample.closed_form_ratio = witness->closed_form_ratio(sample.window);
  });

  bool any_failed = false;
  bool any_mismatch = false;
  double max_hi = 0.0;
  bool have_max = false;
  std::vector<std::pair<double, double>> on_schedule;  // (extent, closed-form ratio)
  for (const RatioSample& s : report.samples) {
    if (!s.ratio) {
      any_failed = true;
      continue;
    }
    if (!have_max || s.ratio->lo > report.max_ratio_lo) report.max_ratio_lo = s.ratio->lo;
    max_hi = have_max ? std::max(max_hi, s.ratio->hi) : s.ratio->hi;
    have_max = true;
    if (s.closed_form_ratio) {
      const double closed_d = s.window.extent() / *s.closed_form_ratio;
      const double slack = 2.0 * window_tol(s.window);
      if (closed_d < s.covering->lo - slack || closed_d > s.covering->hi + slack) {
        any_mismatch = true;
      } else {
        on_schedule.emplace_back(s.window.extent(), *s.closed_form_ratio);
      }
    }
  }

  std::sort(on_schedule.begin(), on_schedule.end());
  bool increasing = on_schedule.size() >= 2;
  for (std::size_t i = 1; i < on_schedule.size(); ++i) {
    if (!(on_schedule[i].second > on_schedule[i - 1].second)) increasing = false;
  }

  if (witness && !any_mismatch && increasing) {
    report.verdict_hint = GrowthHint::Divergent;
  } else if (have_max && !any_failed && !any_mismatch) {
    report.verdict_hint = GrowthHint::Bounded;
    report.bound = max_hi;
  } else {
    report.verdict_hint = GrowthHint::Undetermined;
  }
  return report;
}

std::vector<Window> default_schedule(const SetSpec& set) {
  std::vector<Window> out;
  if (const auto witness = analytic_witness(set)) {
    const int first = witness->schedule == AnalyticWitness::Schedule::GaussUnitCells ? 1 : 2;
    for (int n = first; n <= 16; n *= 2) out.push_back(witness->window(n));
    return out;
  }
  const auto& kind = set.kind();
  if (std::holds_alternative<SetSpec::Geometric>(kind) ||
      std::holds_alternative<SetSpec::ShrinkingRings>(kind)) {
    // Squares spanning the gap between consecutive levels 2^n and 2^(n+1).
    for (int n = 0; n < 16; ++n) {
      const double low = std::ldexp(1.0, n);
      out.push_back(Window::square({0.0, 1.5 * low}, low / 2.0));
    }
    return out;
  }
  for (int k = 0; k <= 6; ++k) out.push_back(Window::square({0.0, 0.0}, std::ldexp(1.0, k)));
  return out;
}

}  // namespace qctame
