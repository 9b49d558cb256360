#include "qctame/qcmaps.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qctame/error.hpp"
#include "qctame/modulus.hpp"
#include "qctame/pointsets.hpp"

namespace qctame {

Curve::Curve(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidArgument("curve needs at least two vertices");
  for (const Point& p : vertices_) {
    if (!p.finite()) throw InvalidArgument("curve vertices must be finite");
  }
}

Curve Curve::upper_half_circle(Point center, double radius, int segments) {
  if (segments < 1 || !(radius > 0.0)) throw InvalidArgument("half circle needs radius > 0");
  std::vector<Point> pts;
  for (int k = 0; k <= segments; ++k) {
    const double t = std::numbers::pi * (1.0 - static_cast<double>(k) / segments);
    pts.push_back({center.re + radius * std::cos(t), center.im + radius * std::sin(t)});
  }
  pts.front() = {center.re - radius, center.im};
  pts.back() = {center.re + radius, center.im};
  return Curve(std::move(pts));
}

double dilatation_estimate(const MapSpec& map, const Window& window, double h) {
  if (!(h > 0.0)) throw InvalidArgument("sample spacing must be positive");
  const Box b = window.bounds();
  const auto steps = static_cast<long long>(std::floor(b.width() / h));
  if ((steps + 1) * (steps + 1) > 4'000'000) {
    throw InvalidArgument("sample spacing too small for the window");
  }
  double worst = 1.0;
  for (long long i = 0; i <= steps; ++i) {
    for (long long j = 0; j <= steps; ++j) {
      const Point p{b.x0 + i * h, b.y0 + j * h};
      if (!window.contains(p)) continue;
      const Point fxp = map.apply({p.re + h, p.im});
      const Point fxm = map.apply({p.re - h, p.im});
      const Point fyp = map.apply({p.re, p.im + h});
      const Point fym = map.apply({p.re, p.im - h});
      const std::complex<double> fx = (fxp.complex() - fxm.complex()) / (2.0 * h);
      const std::complex<double> fy = (fyp.complex() - fym.complex()) / (2.0 * h);
      const std::complex<double> i_unit{0.0, 1.0};
      const std::complex<double> fz = 0.5 * (fx - i_unit * fy);
      const std::complex<double> fzbar = 0.5 * (fx + i_unit * fy);
      const double mu = std::abs(fzbar) / std::abs(fz);
      if (!(mu < 1.0)) throw InvalidArgument("orientation violated at sample");
      worst = std::max(worst, (1.0 + mu) / (1.0 - mu));
    }
  }
  return worst;
}

double image_interval_diameter(const MapSpec& map, double a, double b, int samples) {
  std::vector<Point> image;
  image.reserve(static_cast<std::size_t>(samples) + 1);
  for (int j = 0; j <= samples; ++j) {
    const double x = j == samples ? b : a + (b - a) * j / samples;
    image.push_back(map.apply({x, 0.0}));
  }
  return polyline_diameter(image);
}

double image_interval_diameter(const MapSpec& map, double a, double b) {
  int samples = 64;
  double prev = image_interval_diameter(map, a, b, samples);
  while (samples < 4096) {
    samples *= 2;
    const double next = image_interval_diameter(map, a, b, samples);
    const bool stable = std::abs(next - prev) <= 1e-6 * std::max(1.0, next);
    prev = next;
    if (stable) break;
  }
  return prev;
}

Lemma3Report lemma3_check(const MapSpec& map, double k, long long n, long long m, long long d) {
  if (m <= n) throw InvalidArgument("need m > n");
  if (d < 1) throw InvalidArgument("need d >= 1");
  if (k < map.exact_dilatation() * (1.0 - 1e-12)) {
    throw InvalidArgument("K is below the map's dilatation");
  }
  const double denom = distance(map.apply({static_cast<double>(m), 0.0}),
                                map.apply({static_cast<double>(n), 0.0}));
  if (!(denom > 0.0)) throw InvalidArgument("degenerate denominator");
  const double diam_n = image_interval_diameter(map, static_cast<double>(n - d), static_cast<double>(n));
  const double diam_m = image_interval_diameter(map, static_cast<double>(m), static_cast<double>(m + d));
  Lemma3Report report;
  report.lhs = std::min(diam_n, diam_m) / denom;
  report.rhs = lemma3_rhs(k, n, m, d);
  report.holds = report.lhs <= report.rhs;
  return report;
}

std::optional<long long> small_diameter_search(const MapSpec& map, long long d, double eps,
                                               long long range_lo, long long range_hi) {
  if (d < 1) throw InvalidArgument("need d >= 1");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (range_hi < range_lo) throw InvalidArgument("search range is empty");
  for (long long n = range_lo + d; n <= range_hi; ++n) {
    if (image_interval_diameter(map, static_cast<double>(n - d), static_cast<double>(n)) <= eps) {
      return n;
    }
  }
  return std::nullopt;
}

UniformReport uniform_conditions_check(const Curve& gamma, Point z1, Point z2,
                                       const Boundary& boundary, double c) {
  if (!(c >= 1.0)) throw InvalidArgument("uniformity constant must be >= 1");
  const auto& v = gamma.vertices();
  const double scale = 1e-12 * (1.0 + abs(z1) + abs(z2));
  if (distance(v.front(), z1) > scale || distance(v.back(), z2) > scale) {
    throw InvalidArgument("curve endpoints do not match z1 and z2");
  }
  auto boundary_distance = [&](Point z) {
    if (const auto* set = std::get_if<SetSpec>(&boundary)) return nearest_distance(*set, z);
    return polyline_distance(std::get<Curve>(boundary).vertices(), z);
  };

  UniformReport report;
  const double total = gamma.length();
  const double chord = distance(z1, z2);
  report.length_ratio = chord > 0.0 ? total / chord : std::numeric_limits<double>::infinity();
  report.cond1 = total <= c * chord;

  bool cond2 = true;
  auto check = [&](Point z, double arc) {
    const double shorter = std::min(arc, total - arc);
    const double dist = boundary_distance(z);
    if (shorter > c * dist) cond2 = false;
    if (dist > 0.0) report.worst_cigar = std::max(report.worst_cigar, shorter / dist);
  };
  double arc = 0.0;
  check(v.front(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double seg = distance(v[i - 1], v[i]);
    check(0.5 * (v[i - 1] + v[i]), arc + 0.5 * seg);
    arc += seg;
    check(v[i], i + 1 == v.size() ? total : arc);
  }
  report.cond2 = cond2;
  return report;
}

}  // namespace qctame
