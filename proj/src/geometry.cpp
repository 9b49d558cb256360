#include "qctame/geometry.hpp"

#include <algorithm>
#include <limits>

#include "qctame/error.hpp"

namespace qctame {

Window::Window(WindowShape shape, Point center, double extent)
    : shape_(shape), center_(center), extent_(extent) {
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidArgument("window extent must be positive and finite");
  }
  if (!center.finite()) {
    throw InvalidArgument("window center must be finite");
  }
}

bool Window::contains(Point p) const {
  const double dx = p.re - center_.re;
  const double dy = p.im - center_.im;
  if (shape_ == WindowShape::Square) {
    return std::abs(dx) <= extent_ && std::abs(dy) <= extent_;
  }
  return dx * dx + dy * dy <= extent_ * extent_;
}

Box Window::bounds() const {
  return {center_.re - extent_, center_.re + extent_, center_.im - extent_, center_.im + extent_};
}

double Window::distance_to(Point p) const {
  if (shape_ == WindowShape::Disk) {
    return std::max(0.0, distance(p, center_) - extent_);
  }
  const double dx = std::max(0.0, std::abs(p.re - center_.re) - extent_);
  const double dy = std::max(0.0, std::abs(p.im - center_.im) - extent_);
  return std::hypot(dx, dy);
}

bool Window::intersects(const Box& cell) const {
  const Box b = bounds();
  if (cell.x1 < b.x0 || cell.x0 > b.x1 || cell.y1 < b.y0 || cell.y0 > b.y1) {
    return false;
  }
  if (shape_ == WindowShape::Square) {
    return true;
  }
  const double nx = std::clamp(center_.re, cell.x0, cell.x1);
  const double ny = std::clamp(center_.im, cell.y0, cell.y1);
  return contains({nx, ny});
}

std::string to_string(WindowShape shape) {
  return shape == WindowShape::Disk ? "disk" : "square";
}

WindowShape window_shape_from_string(const std::string& name) {
  if (name == "disk") return WindowShape::Disk;
  if (name == "square") return WindowShape::Square;
  throw InvalidArgument("unknown window shape '" + name + "'");
}

double point_segment_distance(Point p, Point a, Point b) {
  const double vx = b.re - a.re;
  const double vy = b.im - a.im;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t = std::clamp(((p.re - a.re) * vx + (p.im - a.im) * vy) / len2, 0.0, 1.0);
  return distance(p, {a.re + t * vx, a.im + t * vy});
}

namespace {

double cross(Point o, Point a, Point b) {
  return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
}

bool segments_cross(Point a, Point b, Point c, Point d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double segment_segment_distance(Point a, Point b, Point c, Point d) {
  if (segments_cross(a, b, c, d)) {
    return 0.0;
  }
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double polyline_length(std::span<const Point> vertices) {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    total += distance(vertices[i - 1], vertices[i]);
  }
  return total;
}

double polyline_diameter(std::span<const Point> vertices) {
  // The diameter of a polyline is attained at a pair of vertices.
  double best = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      best = std::max(best, distance(vertices[i], vertices[j]));
    }
  }
  return best;
}

double polyline_distance(std::span<const Point> vertices, Point p) {
  if (vertices.size() == 1) {
    return distance(vertices[0], p);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    best = std::min(best, point_segment_distance(p, vertices[i - 1], vertices[i]));
  }
  return best;
}

double polyline_distance(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() == 1) return polyline_distance(b, a[0]);
  if (b.size() == 1) return polyline_distance(a, b[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < a.size(); ++i) {
    for (std::size_t j = 1; j < b.size(); ++j) {
      best = std::min(best, segment_segment_distance(a[i - 1], a[i], b[j - 1], b[j]));
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

}  // namespace qctame
