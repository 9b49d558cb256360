#pragma once

#include <vector>

#include "qctame/geometry.hpp"
#include "qctame/set_spec.hpp"

namespace qctame {

/// A set point `center` together with every set point in the open disk
/// D(center, epsilon).
struct ClusterWitness {
  Point center;
  double epsilon = 0.0;
  int count = 0;
  std::vector<Point> members;  ///< sorted lexicographically; includes center
};

/// #D(a, eps) ∩ A for a set point a. Points at distance exactly eps are excluded.
ClusterWitness cluster_count(const SetSpec& set, Point a, double eps);

/// Witness with the largest count over centres in `window`; ties go to the
/// lexicographically smallest centre.
ClusterWitness max_cluster(const SetSpec& set, const Window& window, double eps,
                           unsigned threads = 0);

/// Same search over centres in an arbitrary closed box, optionally excluding
/// the right edge (x < box.x1).
ClusterWitness max_cluster(const SetSpec& set, const Box& box, double eps, bool open_right,
                           unsigned threads = 0);

struct StripTrace {
  int index = 0;
  double height = 0.0;
  int best_count = 0;
};

struct TheoremBScan {
  bool found = false;        ///< false means Exhausted
  ClusterWitness witness;    ///< the witness, or the best seen when exhausted
  std::vector<StripTrace> trace;
};

/// Scans the strips [0, 1) x [-H, H], H = 2, 4, 8, ..., of the period-normalised
/// set for a centre with at least `d` points in its eps-disk, up to
/// `max_windows` strips. The witness is the best centre of the first strip that
/// reaches `d`; coordinates and eps refer to the normalised set.
TheoremBScan theorem_b_scan(const SetSpec& set, double eps, int d, int max_windows,
                            unsigned threads = 0);

}  // namespace qctame
