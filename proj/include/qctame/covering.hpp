#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qctame/error.hpp"
#include "qctame/geometry.hpp"
#include "qctame/set_spec.hpp"

namespace qctame {

/// [lo, hi] bracketing an exactly defined real quantity.
struct CertifiedInterval {
  double lo = 0.0;
  double hi = 0.0;

  CertifiedInterval() = default;
  CertifiedInterval(double lo_, double hi_);

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const CertifiedInterval&, const CertifiedInterval&) = default;
};

/// Thrown when grid refinement exceeds its sample budget; carries the best
/// enclosure reached so far.
class RefinementBudgetExhausted : public BudgetExhausted {
 public:
  RefinementBudgetExhausted(CertifiedInterval best, std::uint64_t samples);
  CertifiedInterval best;
  std::uint64_t samples;
};

struct CoveringOptions {
  std::uint64_t sample_budget = 100'000'000;
};

struct CoveringStats {
  std::uint64_t samples = 0;
  int levels = 0;
};

/// Enclosure of sup_{w in window} dist(w, set) with width <= tol.
///
/// Cell-centred samples on a grid of spacing h, starting at h = extent / 8 and
/// halving. A cell is dropped once its Lipschitz bound dist(centre) + h*sqrt(2)/2
/// cannot beat the best sample; lo is the best in-window sample and hi the
/// largest bound among live cells.
CertifiedInterval covering_radius(const SetSpec& set, const Window& window, double tol,
                                  const CoveringOptions& options = {},
                                  CoveringStats* stats = nullptr);

/// extent(window) / covering_radius, divided with outward rounding.
CertifiedInterval theorem_a_ratio(const SetSpec& set, const Window& window, double tol,
                                  const CoveringOptions& options = {});

/// Closed-form Theorem A witness for one set family: a window schedule along
/// which extent / covering radius is known exactly and diverges.
struct AnalyticWitness {
  std::string family;
  std::string statement;
  /// Windows indexed by n = 1, 2, ...
  Window window(int n) const;
  /// Closed-form covering radius if `w` lies on the schedule.
  std::optional<double> closed_form_covering(const Window& w) const;
  std::optional<double> closed_form_ratio(const Window& w) const;

  enum class Schedule { GaussUnitCells, CenteredUnitBand, CenteredTopGap, UpperHalfSquares };
  Schedule schedule;
  double s = 1.0;
};

/// Registered witness for `set`, if its family carries one.
std::optional<AnalyticWitness> analytic_witness(const SetSpec& set);

enum class GrowthHint { Divergent, Bounded, Undetermined };
std::string to_string(GrowthHint hint);

struct RatioSample {
  Window window;
  std::optional<CertifiedInterval> covering;
  std::optional<CertifiedInterval> ratio;
  std::optional<double> closed_form_ratio;
  std::string error;
  bool budget_exhausted = false;  ///< covering holds the partial enclosure
};

struct GrowthReport {
  std::vector<RatioSample> samples;
  double max_ratio_lo = 0.0;
  GrowthHint verdict_hint = GrowthHint::Undetermined;
  double bound = 0.0;  ///< largest ratio upper bound when Bounded
  std::string witness_family;
};

struct RatioScanOptions {
  CoveringOptions covering;
  /// Per-window tolerance is tol * max(1, extent) when set.
  bool tol_relative_to_extent = false;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Theorem A ratio on every window of `schedule`.
///
/// Divergent is reported only for families with a registered analytic witness
/// when at least two schedule windows are on the witness schedule, every such
/// window reproduces the closed form within 2*tol, and the closed-form ratios
/// increase along the schedule.
GrowthReport ratio_scan(const SetSpec& set, const std::vector<Window>& schedule, double tol,
                        const RatioScanOptions& options = {});

/// Schedule used by classification: the witness schedule for registered
/// families, squares between consecutive levels for the geometric and ring
/// families, and centred squares of doubling size otherwise.
std::vector<Window> default_schedule(const SetSpec& set);

}  // namespace qctame
