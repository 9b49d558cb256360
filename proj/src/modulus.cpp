#include "qctame/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "qctame/error.hpp"
#include "qctame/format.hpp"

namespace qctame {

Continuum::Continuum(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidArgument("continuum needs at least one vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].finite()) throw InvalidArgument("continuum vertices must be finite");
    if (i > 0 && vertices_[i] == vertices_[i - 1]) {
      throw InvalidArgument("consecutive continuum vertices must be distinct");
    }
  }
}

Continuum Continuum::circle(Point center, double radius, int vertices) {
  if (vertices < 3 || !(radius > 0.0)) throw InvalidArgument("circle needs radius > 0 and >= 3 vertices");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(vertices) + 1);
  for (int k = 0; k < vertices; ++k) {
    const double t = 2.0 * std::numbers::pi * k / vertices;
    pts.push_back({center.re + radius * std::cos(t), center.im + radius * std::sin(t)});
  }
  pts.push_back(pts.front());
  return Continuum(std::move(pts));
}

double vuorinen_lower(const Continuum& e, const Continuum& f) {
  const double de = e.diameter();
  const double df = f.diameter();
  if (!(de > 0.0) || !(df > 0.0)) throw InvalidArgument("degenerate continuum");
  const double dist = e.distance_to(f);
  if (!(dist > 0.0)) throw InvalidArgument("continua intersect");
  return 2.0 / std::numbers::pi * std::log1p(std::min(de, df) / dist);
}

namespace {

double separation_log(long long n, long long m, long long d) {
  if (m <= n) throw InvalidArgument("need m > n");
  if (d < 1) throw InvalidArgument("need d >= 1");
  return std::log1p(2.0 * static_cast<double>(m - n) / static_cast<double>(d));
}

}  // namespace

double ring_upper(long long n, long long m, long long d) {
  return 2.0 * std::numbers::pi / separation_log(n, m, d);
}

double lemma3_rhs(double k, long long n, long long m, long long d) {
  if (!(k >= 1.0)) throw InvalidArgument("dilatation below 1");
  return std::expm1(std::numbers::pi * std::numbers::pi * k / separation_log(n, m, d));
}

std::pair<double, double> qc_modulus_bounds(double k, double mod_value) {
  if (!(k >= 1.0)) throw InvalidArgument("dilatation below 1");
  if (!(mod_value >= 0.0)) throw InvalidArgument("modulus must be nonnegative");
  return {mod_value / k, mod_value * k};
}

// ---------------------------------------------------------------------------
// Problems

void CondenserProblem::validate() const {
  if (!(grid_spacing > 0.0) || !std::isfinite(grid_spacing)) {
    throw InvalidArgument("grid spacing must be positive");
  }
  if (domain.empty() || !(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw InvalidArgument("condenser domain must have positive area");
  }
  if (grid_spacing * 4.0 > std::min(domain.width(), domain.height())) {
    throw InvalidArgument("grid spacing too coarse for the domain");
  }
  const Box slack = domain.inflated(grid_spacing * 1e-9);
  for (const auto* plate : {&e, &f}) {
    for (const Point& p : plate->vertices()) {
      if (!slack.contains(p)) throw InvalidArgument("plates must lie inside the domain");
    }
  }
  if (!(e.distance_to(f) > 0.0)) throw InvalidArgument("plates intersect");
}

CondenserProblem CondenserProblem::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  auto scale = [&](const Continuum& c) {
    std::vector<Point> v;
    for (const Point& p : c.vertices()) v.push_back(factor * p);
    return Continuum(std::move(v));
  };
  return {{domain.x0 * factor, domain.x1 * factor, domain.y0 * factor, domain.y1 * factor},
          scale(e), scale(f), grid_spacing * factor};
}

CondenserProblem CondenserProblem::padded_twice() const {
  const double hw = domain.width();
  const double hh = domain.height();
  return {{domain.x0 - hw / 2.0, domain.x1 + hw / 2.0, domain.y0 - hh / 2.0, domain.y1 + hh / 2.0},
          e, f, grid_spacing};
}

namespace {

int circle_vertices(double radius, double h) {
  return std::max(256, static_cast<int>(std::ceil(2.0 * std::numbers::pi * radius / (h / 4.0))));
}

}  // namespace

CondenserProblem annulus_problem(double inner, double outer, double h) {
  if (!(inner > 0.0) || !(outer > inner)) throw InvalidArgument("annulus needs 0 < inner < outer");
  // Half-side rounded up to whole cells, leaving at least two cells outside F.
  const double half = std::ceil(outer / h + 2.0) * h;
  return {{-half, half, -half, half},
          Continuum::circle({0.0, 0.0}, inner, circle_vertices(inner, h)),
          Continuum::circle({0.0, 0.0}, outer, circle_vertices(outer, h)),
          h};
}

CondenserProblem rectangle_problem(double length, double width, double h) {
  if (!(length > 0.0) || !(width > 0.0)) throw InvalidArgument("rectangle sides must be positive");
  return {{0.0, length, 0.0, width},
          Continuum::segment({0.0, 0.0}, {0.0, width}),
          Continuum::segment({length, 0.0}, {length, width}),
          h};
}

CondenserProblem interval_problem(long long n, long long m, long long d, double h, double pad_factor) {
  if (m <= n) throw InvalidArgument("need m > n");
  if (d < 1) throw InvalidArgument("need d >= 1");
  if (!(pad_factor >= 1.0)) throw InvalidArgument("pad factor must be >= 1");
  const double left = static_cast<double>(n - d);
  const double right = static_cast<double>(m + d);
  const double mid = 0.5 * (left + right);
  // Round the half-side to whole cells so the real axis is a grid line.
  const double half = std::ceil(0.5 * pad_factor * (right - left) / h) * h;
  return {{mid - half, mid + half, -half, half},
          Continuum::interval(left, static_cast<double>(n)),
          Continuum::interval(static_cast<double>(m), right),
          h};
}

// ---------------------------------------------------------------------------
// Solver

namespace {

enum Label : std::uint8_t { kFree = 0, kPlateE = 1, kPlateF = 2 };

struct Grid {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 0.0;
  std::vector<std::uint8_t> label;

  std::size_t at(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Point center(int i, int j) const { return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h}; }
};

void rasterize(Grid& g, const Continuum& plate, Label value) {
  const auto& v = plate.vertices();
  const double reach = 0.5 * g.h * (1.0 + 1e-12);
  auto mark_near = [&](Point a, Point b) {
    const int i0 = std::max(0, static_cast<int>(std::floor((std::min(a.re, b.re) - reach - g.x0) / g.h)));
    const int i1 = std::min(g.nx - 1, static_cast<int>(std::floor((std::max(a.re, b.re) + reach - g.x0) / g.h)));
    const int j0 = std::max(0, static_cast<int>(std::floor((std::min(a.im, b.im) - reach - g.y0) / g.h)));
    const int j1 = std::min(g.ny - 1, static_cast<int>(std::floor((std::max(a.im, b.im) + reach - g.y0) / g.h)));
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        if (point_segment_distance(g.center(i, j), a, b) > reach) continue;
        auto& cell = g.label[g.at(i, j)];
        if (cell != kFree && cell != value) throw InvalidArgument("plates merge on grid");
        cell = value;
      }
    }
  };
  if (v.size() == 1) {
    mark_near(v[0], v[0]);
    return;
  }
  for (std::size_t k = 1; k < v.size(); ++k) mark_near(v[k - 1], v[k]);
}

// Matrix-free Neumann Laplacian restricted to the unknown cells, with
// symmetric SOR preconditioning. Unknowns are numbered row-major, so the west
// and south neighbours precede a cell and the east and north ones follow it.
struct System {
  std::vector<std::int32_t> west, east, south, north;
  std::vector<double> diag;
  std::vector<double> rhs;

  std::size_t size() const { return diag.size(); }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      double acc = diag[i] * x[i];
      if (west[i] >= 0) acc -= x[static_cast<std::size_t>(west[i])];
      if (east[i] >= 0) acc -= x[static_cast<std::size_t>(east[i])];
      if (south[i] >= 0) acc -= x[static_cast<std::size_t>(south[i])];
      if (north[i] >= 0) acc -= x[static_cast<std::size_t>(north[i])];
      y[i] = acc;
    }
  }

  void precondition(const std::vector<double>& r, std::vector<double>& z, double omega) const {
    const std::size_t n = size();
    const double scale = omega * (2.0 - omega);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = scale * r[i];
      if (west[i] >= 0) acc += omega * z[static_cast<std::size_t>(west[i])];
      if (south[i] >= 0) acc += omega * z[static_cast<std::size_t>(south[i])];
      z[i] = acc / diag[i];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] *= diag[i];
    for (std::size_t k = n; k-- > 0;) {
      double acc = z[k];
      if (east[k] >= 0) acc += omega * z[static_cast<std::size_t>(east[k])];
      if (north[k] >= 0) acc += omega * z[static_cast<std::size_t>(north[k])];
      z[k] = acc / diag[k];
    }
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(acc);
}

}  // namespace

GridSolve solve_condenser(const CondenserProblem& problem, double h, const SolverOptions& options) {
  CondenserProblem at_h = problem;
  at_h.grid_spacing = h;
  at_h.validate();

  Grid g;
  g.h = h;
  g.x0 = problem.domain.x0;
  g.y0 = problem.domain.y0;
  g.nx = static_cast<int>(std::ceil(problem.domain.width() / h - 1e-9));
  g.ny = static_cast<int>(std::ceil(problem.domain.height() / h - 1e-9));
  if (static_cast<std::int64_t>(g.nx) * g.ny > options.max_cells) {
    throw BudgetExhausted("condenser grid exceeds the cell budget");
  }
  g.label.assign(static_cast<std::size_t>(g.nx) * g.ny, kFree);
  rasterize(g, problem.e, kPlateE);
  rasterize(g, problem.f, kPlateF);

  const std::size_t cells = g.label.size();
  const int dxs[4] = {-1, 1, 0, 0};
  const int dys[4] = {0, 0, -1, 1};
  auto neighbour = [&](int i, int j, int k, int& ni, int& nj) {
    ni = i + dxs[k];
    nj = j + dys[k];
    return ni >= 0 && nj >= 0 && ni < g.nx && nj < g.ny;
  };

  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (g.label[g.at(i, j)] != kPlateE) continue;
      for (int k = 0; k < 4; ++k) {
        int ni = 0, nj = 0;
        if (neighbour(i, j, k, ni, nj) && g.label[g.at(ni, nj)] == kPlateF) {
          throw InvalidArgument("plates merge on grid");
        }
      }
    }
  }

  // Free components touching only one plate (or none) are constant there.
  std::vector<std::int32_t> component(cells, -1);
  std::vector<std::uint8_t> touches;  // bit 0: E, bit 1: F
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t start = g.at(i, j);
      if (g.label[start] != kFree || component[start] >= 0) continue;
      const auto id = static_cast<std::int32_t>(touches.size());
      touches.push_back(0);
      std::queue<std::pair<int, int>> queue;
      queue.emplace(i, j);
      component[start] = id;
      while (!queue.empty()) {
        const auto [ci, cj] = queue.front();
        queue.pop();
        for (int k = 0; k < 4; ++k) {
          int ni = 0, nj = 0;
          if (!neighbour(ci, cj, k, ni, nj)) continue;
          const std::size_t c = g.at(ni, nj);
          if (g.label[c] == kPlateE) touches.back() |= 1;
          else if (g.label[c] == kPlateF) touches.back() |= 2;
          else if (component[c] < 0) {
            component[c] = id;
            queue.emplace(ni, nj);
          }
        }
      }
    }
  }

  std::vector<double> u(cells, 0.0);
  std::vector<std::int32_t> unknown(cells, -1);
  System sys;
  for (std::size_t c = 0; c < cells; ++c) {
    if (g.label[c] == kPlateF) u[c] = 1.0;
    if (g.label[c] != kFree) continue;
    const std::uint8_t t = touches[static_cast<std::size_t>(component[c])];
    if (t == 3) {
      unknown[c] = static_cast<std::int32_t>(sys.diag.size());
      sys.diag.push_back(0.0);
    } else if (t == 2) {
      u[c] = 1.0;
    }
  }
  const std::size_t n = sys.size();
  sys.west.assign(n, -1);
  sys.east.assign(n, -1);
  sys.south.assign(n, -1);
  sys.north.assign(n, -1);
  sys.rhs.assign(n, 0.0);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::int32_t row = unknown[g.at(i, j)];
      if (row < 0) continue;
      const auto r = static_cast<std::size_t>(row);
      for (int k = 0; k < 4; ++k) {
        int ni = 0, nj = 0;
        if (!neighbour(i, j, k, ni, nj)) continue;
        const std::size_t c = g.at(ni, nj);
        sys.diag[r] += 1.0;
        if (unknown[c] >= 0) {
          std::vector<std::int32_t>* slot[4] = {&sys.west, &sys.east, &sys.south, &sys.north};
          (*slot[k])[r] = unknown[c];
        } else {
          sys.rhs[r] += u[c];
        }
      }
    }
  }

  GridSolve result;
  result.h = h;
  result.unknowns = static_cast<std::int64_t>(n);
  if (n > 0) {
    const double omega = std::clamp(2.0 / (1.0 + std::numbers::pi / std::max(g.nx, g.ny) * 2.0), 1.0, 1.95);
    std::vector<double> x(n, 0.0), r = sys.rhs, z(n, 0.0), p(n), q(n);
    const double bnorm = std::sqrt(dot(sys.rhs, sys.rhs));
    sys.precondition(r, z, omega);
    p = z;
    double rz = dot(r, z);
    double rnorm = bnorm;
    std::int64_t it = 0;
    while (bnorm > 0.0 && rnorm > options.relative_residual * bnorm) {
      if (it >= options.max_iterations) {
        throw BudgetExhausted("condenser solve did not converge; relative residual " +
                              format_double(rnorm / bnorm));
      }
      sys.apply(p, q);
      const double alpha = rz / dot(p, q);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      rnorm = std::sqrt(dot(r, r));
      sys.precondition(r, z, omega);
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
      ++it;
    }
    result.iterations = it;
    result.residual = bnorm > 0.0 ? rnorm / bnorm : 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      if (unknown[c] >= 0) u[c] = x[static_cast<std::size_t>(unknown[c])];
    }
  }

  long double energy = 0.0L;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double here = u[g.at(i, j)];
      if (i + 1 < g.nx) {
        const double d = here - u[g.at(i + 1, j)];
        energy += static_cast<long double>(d) * d;
      }
      if (j + 1 < g.ny) {
        const double d = here - u[g.at(i, j + 1)];
        energy += static_cast<long double>(d) * d;
      }
    }
  }
  result.value = static_cast<double>(energy);
  return result;
}

CertifiedEstimate condenser_modulus(const CondenserProblem& problem, const SolverOptions& options) {
  problem.validate();
  CertifiedEstimate est;
  est.grid_spacing = problem.grid_spacing;
  est.fine = solve_condenser(problem, problem.grid_spacing, options);
  est.coarse = solve_condenser(problem, 2.0 * problem.grid_spacing, options);
  est.value = est.fine.value;
  est.extrapolated = 2.0 * est.fine.value - est.coarse.value;
  return est;
}

double padding_sensitivity(const CondenserProblem& problem, const SolverOptions& options) {
  const double base = solve_condenser(problem, problem.grid_spacing, options).value;
  const double padded = solve_condenser(problem.padded_twice(), problem.grid_spacing, options).value;
  return std::abs(padded - base) / base;
}

}  // namespace qctame
