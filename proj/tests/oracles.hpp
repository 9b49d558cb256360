#pragma once
// Independent brute-force reference computations. These deliberately avoid the
// library's enumeration and search code paths.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qctame/geometry.hpp"

namespace oracle {

using qctame::Point;

inline bool in_window(const qctame::Window& w, Point p) {
  const double dx = p.re - w.center().re;
  const double dy = p.im - w.center().im;
  if (w.shape() == qctame::WindowShape::Disk) return dx * dx + dy * dy <= w.extent() * w.extent();
  return std::abs(dx) <= w.extent() && std::abs(dy) <= w.extent();
}

inline std::vector<Point> sorted(std::vector<Point> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Z + iH for an explicit list of heights, integer shifts |k| <= kmax.
inline std::vector<Point> rows(const std::vector<double>& heights, int kmax, const qctame::Window& w) {
  std::vector<Point> out;
  for (double h : heights) {
    for (int k = -kmax; k <= kmax; ++k) {
      const Point p{static_cast<double>(k), h};
      if (in_window(w, p)) out.push_back(p);
    }
  }
  return sorted(out);
}

inline std::vector<double> as_heights(double s, int nmax, bool symmetric) {
  std::vector<double> h;
  for (int n = 0; n <= nmax; ++n) {
    h.push_back(std::pow(n, s));
    if (symmetric && n > 0) h.push_back(-std::pow(n, s));
  }
  return h;
}

// i * (2^n + 2^-(n+1) e^{2 pi i k / n}) + m, written out directly.
inline Point ring_point(int n, int k, int m) {
  const double r = std::pow(0.5, n + 1);
  const double t = 2.0 * std::numbers::pi * k / n;
  const double re = -r * std::sin(t);
  const double im = std::pow(2.0, n) + r * std::cos(t);
  return {m + re + 0.0, im};
}

inline std::vector<Point> rings(int nmax, int mmax, const qctame::Window& w) {
  std::vector<Point> out;
  for (int n = 1; n <= nmax; ++n) {
    for (int k = 0; k < n; ++k) {
      for (int m = -mmax; m <= mmax; ++m) {
        const Point p = ring_point(n, k, m);
        if (in_window(w, p)) out.push_back(p);
      }
    }
  }
  return sorted(out);
}

inline double nearest(const std::vector<Point>& pts, Point w) {
  double best = INFINITY;
  for (const Point& p : pts) best = std::min(best, std::hypot(p.re - w.re, p.im - w.im));
  return best;
}

// Maximum over all-pairs counts |b - a| < eps with a ranging over `centers`.
inline int all_pairs_max(const std::vector<Point>& centers, const std::vector<Point>& pool, double eps) {
  int best = 0;
  for (const Point& a : centers) {
    int c = 0;
    for (const Point& b : pool) c += std::hypot(a.re - b.re, a.im - b.im) < eps;
    best = std::max(best, c);
  }
  return best;
}

}  // namespace oracle
