#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qctame/geometry.hpp"
#include "qctame/map_spec.hpp"
#include "qctame/set_spec.hpp"

namespace qctame {

/// Rectifiable polyline curve with at least two vertices.
class Curve {
 public:
  explicit Curve(std::vector<Point> vertices);
  /// Inscribed polyline of the upper half circle from -radius to +radius through i*radius.
  static Curve upper_half_circle(Point center, double radius, int segments);

  const std::vector<Point>& vertices() const { return vertices_; }
  double length() const { return polyline_length(vertices_); }

 private:
  std::vector<Point> vertices_;
};

/// max over samples of (1 + |mu|) / (1 - |mu|), mu = f_zbar / f_z from central
/// differences of step h on a grid of spacing h over the window.
double dilatation_estimate(const MapSpec& map, const Window& window, double h);

/// Sampled diameter of f([a, b]) for a real interval; starts at 64 samples and
/// doubles until consecutive values agree to 1e-6.
double image_interval_diameter(const MapSpec& map, double a, double b);
/// Diameter of f([a, b]) from exactly `samples` + 1 equally spaced samples.
double image_interval_diameter(const MapSpec& map, double a, double b, int samples);

struct Lemma3Report {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// min(diam f(N_d), diam f(M_d)) / |f(m) - f(n)| against lemma3_rhs(K, n, m, d).
Lemma3Report lemma3_check(const MapSpec& map, double k, long long n, long long m, long long d);

/// Smallest n with [n - d, n] inside `range` and sampled diam f([n - d, n]) <= eps.
std::optional<long long> small_diameter_search(const MapSpec& map, long long d, double eps,
                                               long long range_lo, long long range_hi);

struct UniformReport {
  bool cond1 = false;
  bool cond2 = false;
  double length_ratio = 0.0;  ///< length / |z1 - z2|
  double worst_cigar = 0.0;   ///< max over checked points of min arc length / dist to boundary
};

using Boundary = std::variant<SetSpec, Curve>;

/// Checks the length condition and the cigar condition of a c-uniform domain
/// along gamma. The cigar condition is evaluated at every vertex and segment
/// midpoint of gamma.
UniformReport uniform_conditions_check(const Curve& gamma, Point z1, Point z2,
                                       const Boundary& boundary, double c);

}  // namespace qctame
