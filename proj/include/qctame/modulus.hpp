#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qctame/geometry.hpp"

namespace qctame {

/// A polyline continuum E or F. Consecutive vertices are distinct.
class Continuum {
 public:
  explicit Continuum(std::vector<Point> vertices);

  /// Closed segment [a, b].
  static Continuum segment(Point a, Point b) { return Continuum({a, b}); }
  /// Real interval [a, b] on the real axis.
  static Continuum interval(double a, double b) { return segment({a, 0.0}, {b, 0.0}); }
  /// Closed inscribed polygon of a circle with `vertices` corners.
  static Continuum circle(Point center, double radius, int vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  double diameter() const { return polyline_diameter(vertices_); }
  double distance_to(const Continuum& other) const {
    return polyline_distance(vertices_, other.vertices_);
  }
  double distance_to(Point p) const { return polyline_distance(vertices_, p); }

 private:
  std::vector<Point> vertices_;
};

/// (2/pi) log(1 + min(diam E, diam F) / dist(E, F)), a lower bound for the
/// modulus of the curve family joining E and F.
double vuorinen_lower(const Continuum& e, const Continuum& f);

/// 2 pi / log(1 + 2 (m - n) / d): modulus upper bound for the family joining
/// [n - d, n] and [m, m + d], from the separating ring around [n - d, n].
double ring_upper(long long n, long long m, long long d);

/// exp(pi^2 K / log(1 + 2 (m - n) / d)) - 1.
double lemma3_rhs(double k, long long n, long long m, long long d);

/// Admissible image modulus range (v / K, v K) under a K-quasiconformal map.
std::pair<double, double> qc_modulus_bounds(double k, double mod_value);

/// Discrete condenser on an axis-aligned rectangle with insulated sides.
struct CondenserProblem {
  Box domain;
  Continuum e;  ///< plate held at potential 0
  Continuum f;  ///< plate held at potential 1
  double grid_spacing;

  void validate() const;
  CondenserProblem scaled(double factor) const;
  /// Same plates and spacing on a domain of twice the side, same centre.
  CondenserProblem padded_twice() const;
};

/// 1 < |z| < ratio annulus in a square domain just enclosing the outer circle.
CondenserProblem annulus_problem(double inner, double outer, double h);
/// Rectangle [0, length] x [0, width] with E and F the left and right edges.
CondenserProblem rectangle_problem(double length, double width, double h);
/// N_d = [n - d, n], M_d = [m, m + d] in a square box of side
/// pad_factor * (m - n + 2d) centred on the configuration.
CondenserProblem interval_problem(long long n, long long m, long long d, double h,
                                  double pad_factor = 8.0);

struct SolverOptions {
  double relative_residual = 1e-10;
  std::int64_t max_iterations = 100'000;
  std::int64_t max_cells = 60'000'000;
};

struct GridSolve {
  double h = 0.0;
  double value = 0.0;  ///< discrete Dirichlet energy, the modulus estimate
  double residual = 0.0;
  std::int64_t iterations = 0;
  std::int64_t unknowns = 0;
};

/// Solves the discrete Dirichlet problem at spacing h.
GridSolve solve_condenser(const CondenserProblem& problem, double h, const SolverOptions& options = {});

struct CertifiedEstimate {
  double value = 0.0;         ///< energy at the problem's grid spacing h
  double grid_spacing = 0.0;
  double extrapolated = 0.0;  ///< first-order Richardson from spacings 2h and h
  GridSolve fine;
  GridSolve coarse;
};

/// Modulus of the family joining E and F in the domain. The coarse solve uses
/// spacing 2h; extrapolated = 2 v(h) - v(2h).
CertifiedEstimate condenser_modulus(const CondenserProblem& problem, const SolverOptions& options = {});

/// |v(padded) - v| / v at the problem's spacing.
double padding_sensitivity(const CondenserProblem& problem, const SolverOptions& options = {});

}  // namespace qctame
