#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace qctame {

/// A point of the plane. Both coordinates are finite.
struct Point {
  double re = 0.0;
  double im = 0.0;

  constexpr Point() = default;
  constexpr Point(double re_, double im_) : re(re_), im(im_) {}
  explicit Point(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> complex() const { return {re, im}; }
  bool finite() const { return std::isfinite(re) && std::isfinite(im); }

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.re + b.re, a.im + b.im}; }
inline Point operator-(Point a, Point b) { return {a.re - b.re, a.im - b.im}; }
inline Point operator*(double s, Point a) { return {s * a.re, s * a.im}; }

inline double abs(Point p) { return std::hypot(p.re, p.im); }
inline double distance(Point a, Point b) { return std::hypot(a.re - b.re, a.im - b.im); }

/// Closed axis-aligned box [x0, x1] x [y0, y1].
struct Box {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  bool contains(Point p) const { return p.re >= x0 && p.re <= x1 && p.im >= y0 && p.im <= y1; }
  bool empty() const { return x1 < x0 || y1 < y0; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  Box inflated(double by) const { return {x0 - by, x1 + by, y0 - by, y1 + by}; }
};

enum class WindowShape { Disk, Square };

/// Closed disk of radius `extent` or closed square of half-side `extent`.
class Window {
 public:
  Window(WindowShape shape, Point center, double extent);

  static Window disk(Point center, double radius) { return {WindowShape::Disk, center, radius}; }
  static Window square(Point center, double half_side) {
    return {WindowShape::Square, center, half_side};
  }

  WindowShape shape() const { return shape_; }
  Point center() const { return center_; }
  double extent() const { return extent_; }

  bool contains(Point p) const;
  Box bounds() const;
  Window translated(Point by) const { return {shape_, center_ + by, extent_}; }
  Window with_extent(double extent) const { return {shape_, center_, extent}; }

  /// Smallest distance from the window to `p` (0 inside).
  double distance_to(Point p) const;
  /// True if the closed cell intersects the window.
  bool intersects(const Box& cell) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  WindowShape shape_;
  Point center_;
  double extent_;
};

std::string to_string(WindowShape shape);
WindowShape window_shape_from_string(const std::string& name);

/// Euclidean distance from `p` to the closed segment [a, b].
double point_segment_distance(Point p, Point a, Point b);
/// Euclidean distance between closed segments [a, b] and [c, d].
double segment_segment_distance(Point a, Point b, Point c, Point d);

/// Polyline helpers shared by continua and curves.
double polyline_length(std::span<const Point> vertices);
double polyline_diameter(std::span<const Point> vertices);
double polyline_distance(std::span<const Point> vertices, Point p);
double polyline_distance(std::span<const Point> a, std::span<const Point> b);

}  // namespace qctame
