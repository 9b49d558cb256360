#include "qctame/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "qctame/error.hpp"
#include "qctame/parallel.hpp"
#include "qctame/pointsets.hpp"

namespace qctame {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be positive");
}

// Bucket grid of cell size eps over a point pool; a query visits the 3x3 block
// of cells around the query point.
class PointIndex {
 public:
  PointIndex(const std::vector<Point>& pool, double eps) : eps_(eps) {
    entries_.reserve(pool.size());
    for (const Point& p : pool) entries_.push_back({cell(p.re), cell(p.im), p});
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.ix, a.iy, a.p) < std::tie(b.ix, b.iy, b.p);
    });
  }

  // Points strictly inside D(a, eps), sorted.
  std::vector<Point> open_disk(Point a) const {
    std::vector<Point> out;
    const long long cx = cell(a.re);
    const long long cy = cell(a.im);
    for (long long ix = cx - 1; ix <= cx + 1; ++ix) {
      auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{ix, cy - 1},
                                 [](const Entry& e, const std::pair<long long, long long>& k) {
                                   return std::tie(e.ix, e.iy) < std::tie(k.first, k.second);
                                 });
      for (; it != entries_.end() && it->ix == ix && it->iy <= cy + 1; ++it) {
        if (distance(it->p, a) < eps_) out.push_back(it->p);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Entry {
    long long ix;
    long long iy;
    Point p;
  };
  long long cell(double v) const { return static_cast<long long>(std::floor(v / eps_)); }

  double eps_;
  std::vector<Entry> entries_;
};

ClusterWitness best_over_centers(const std::vector<Point>& centers, const std::vector<Point>& pool,
                                 double eps, unsigned threads) {
  const PointIndex index(pool, eps);
  std::vector<int> counts(centers.size(), 0);
  parallel_for(centers.size(), threads, [&](std::size_t i) {
    counts[i] = static_cast<int>(index.open_disk(centers[i]).size());
  });
  // Centres are sorted, so the first maximum is the lexicographic tie-break.
  const auto best = std::max_element(counts.begin(), counts.end());
  const Point center = centers[static_cast<std::size_t>(best - counts.begin())];
  ClusterWitness w{center, eps, 0, index.open_disk(center)};
  w.count = static_cast<int>(w.members.size());
  return w;
}

}  // namespace

ClusterWitness cluster_count(const SetSpec& set, Point a, double eps) {
  check_eps(eps);
  if (nearest_distance(set, a) != 0.0) throw InvalidArgument("center not a set point");
  const auto pool = enumerate(set, Window::disk(a, eps));
  ClusterWitness w{a, eps, 0, PointIndex(pool, eps).open_disk(a)};
  w.count = static_cast<int>(w.members.size());
  return w;
}

ClusterWitness max_cluster(const SetSpec& set, const Box& box, double eps, bool open_right,
                           unsigned threads) {
  check_eps(eps);
  auto centers = enumerate(set, box);
  if (open_right) std::erase_if(centers, [&](const Point& p) { return p.re >= box.x1; });
  if (centers.empty()) throw InvalidArgument("no set points in window");
  // Neighbours of boundary centres may lie up to eps outside the region.
  const auto pool = enumerate(set, box.inflated(eps));
  return best_over_centers(centers, pool, eps, threads);
}

ClusterWitness max_cluster(const SetSpec& set, const Window& window, double eps, unsigned threads) {
  check_eps(eps);
  const auto centers = enumerate(set, window);
  if (centers.empty()) throw InvalidArgument("no set points in window");
  const auto pool = enumerate(set, window.bounds().inflated(eps));
  return best_over_centers(centers, pool, eps, threads);
}

TheoremBScan theorem_b_scan(const SetSpec& set, double eps, int d, int max_windows,
                            unsigned threads) {
  check_eps(eps);
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (max_windows < 1) throw InvalidArgument("max_windows must be >= 1");
  const SetSpec normalized = normalize_period(set);

  TheoremBScan scan;
  bool have_best = false;
  double height = 2.0;
  for (int index = 0; index < max_windows; ++index, height *= 2.0) {
    const Box strip{0.0, 1.0, -height, height};
    StripTrace row{index, height, 0};
    try {
      const ClusterWitness w = max_cluster(normalized, strip, eps, /*open_right=*/true, threads);
      row.best_count = w.count;
      if (!have_best || w.count > scan.witness.count) {
        scan.witness = w;
        have_best = true;
      }
      scan.trace.push_back(row);
      if (w.count >= d) {
        scan.found = true;
        scan.witness = w;
        return scan;
      }
    } catch (const InvalidArgument&) {
      // Strip holds no set point yet.
      scan.trace.push_back(row);
    }
  }
  if (!have_best) throw InvalidArgument("no set points in any scanned strip");
  return scan;
}

}  // namespace qctame
