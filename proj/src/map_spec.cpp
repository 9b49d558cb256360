#include "qctame/map_spec.hpp"

#include <algorithm>
#include <cmath>

#include "qctame/error.hpp"

namespace qctame {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

MapSpec::MapSpec(Kind kind) : kind_(std::move(kind)) {
  if (const auto* pw = std::get_if<PiecewiseAffine>(&kind_)) {
    // knot_values_[i] = phi(breakpoints[i]), anchored by phi(0) = 0.
    const auto& bp = pw->breakpoints;
    knot_values_.assign(bp.size(), 0.0);
    const auto first_right = static_cast<std::size_t>(
        std::upper_bound(bp.begin(), bp.end(), 0.0) - bp.begin());
    // Segment containing 0 carries slopes[first_right].
    for (std::size_t i = first_right; i < bp.size(); ++i) {
      const double left = i == first_right ? 0.0 : bp[i - 1];
      const double left_value = i == first_right ? 0.0 : knot_values_[i - 1];
      knot_values_[i] = left_value + pw->slopes[i] * (bp[i] - left);
    }
    for (std::size_t j = first_right; j-- > 0;) {
      const double right = j + 1 == first_right ? 0.0 : bp[j + 1];
      const double right_value = j + 1 == first_right ? 0.0 : knot_values_[j + 1];
      knot_values_[j] = right_value - pw->slopes[j + 1] * (right - bp[j]);
    }
  }
}

MapSpec MapSpec::affine(std::complex<double> a, std::complex<double> b) {
  if (a == std::complex<double>(0.0, 0.0) || !std::isfinite(a.real()) ||
      !std::isfinite(a.imag()) || !std::isfinite(b.real()) || !std::isfinite(b.imag())) {
    throw InvalidArgument("affine map needs finite a != 0 and finite b");
  }
  return MapSpec(Affine{a, b});
}

MapSpec MapSpec::horizontal_stretch(double k) {
  if (!(k >= 1.0) || !std::isfinite(k)) {
    throw InvalidArgument("stretch factor K must be >= 1");
  }
  return MapSpec(HorizontalStretch{k});
}

MapSpec MapSpec::piecewise_affine(std::vector<double> breakpoints, std::vector<double> slopes) {
  if (slopes.size() != breakpoints.size() + 1) {
    throw InvalidArgument("piecewise map needs exactly one more slope than breakpoints");
  }
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
      std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end()) {
    throw InvalidArgument("piecewise map breakpoints must be strictly increasing");
  }
  for (double s : slopes) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("piecewise map slopes must be positive");
    }
  }
  for (double b : breakpoints) {
    if (!std::isfinite(b)) throw InvalidArgument("piecewise map breakpoints must be finite");
  }
  return MapSpec(PiecewiseAffine{std::move(breakpoints), std::move(slopes)});
}

std::string MapSpec::name() const {
  return std::visit(Overloaded{[](const Identity&) { return std::string("identity"); },
                               [](const Affine&) { return std::string("affine"); },
                               [](const HorizontalStretch&) { return std::string("stretch"); },
                               [](const PiecewiseAffine&) { return std::string("piecewise"); }},
                    kind_);
}

double MapSpec::phi(double x) const {
  const auto& pw = std::get<PiecewiseAffine>(kind_);
  const auto& bp = pw.breakpoints;
  const auto idx = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), x) - bp.begin());
  // x lies on the segment with slope slopes[idx].
  if (idx < bp.size()) {
    return knot_values_[idx] - pw.slopes[idx] * (bp[idx] - x);
  }
  if (bp.empty()) {
    return pw.slopes[0] * x;
  }
  return knot_values_.back() + pw.slopes.back() * (x - bp.back());
}

double MapSpec::phi_inverse(double y) const {
  const auto& pw = std::get<PiecewiseAffine>(kind_);
  const auto& bp = pw.breakpoints;
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(knot_values_.begin(), knot_values_.end(), y) - knot_values_.begin());
  if (idx < bp.size()) {
    return bp[idx] - (knot_values_[idx] - y) / pw.slopes[idx];
  }
  if (bp.empty()) {
    return y / pw.slopes[0];
  }
  return bp.back() + (y - knot_values_.back()) / pw.slopes.back();
}

Point MapSpec::apply(Point p) const {
  return std::visit(Overloaded{[&](const Identity&) { return p; },
                               [&](const Affine& m) { return Point(m.a * p.complex() + m.b); },
                               [&](const HorizontalStretch& m) { return Point{m.k * p.re, p.im}; },
                               [&](const PiecewiseAffine&) { return Point{phi(p.re), p.im}; }},
                    kind_);
}

Point MapSpec::inverse(Point p) const {
  return std::visit(
      Overloaded{[&](const Identity&) { return p; },
                 [&](const Affine& m) { return Point((p.complex() - m.b) / m.a); },
                 [&](const HorizontalStretch& m) { return Point{p.re / m.k, p.im}; },
                 [&](const PiecewiseAffine&) { return Point{phi_inverse(p.re), p.im}; }},
      kind_);
}

double MapSpec::exact_dilatation() const {
  return std::visit(Overloaded{[](const Identity&) { return 1.0; },
                               [](const Affine&) { return 1.0; },
                               [](const HorizontalStretch& m) { return m.k; },
                               [](const PiecewiseAffine& m) {
                                 double k = 1.0;
                                 for (double s : m.slopes) k = std::max({k, s, 1.0 / s});
                                 return k;
                               }},
                    kind_);
}

Box MapSpec::preimage_bounds(const Box& box) const {
  const Point corners[4] = {{box.x0, box.y0}, {box.x1, box.y0}, {box.x0, box.y1}, {box.x1, box.y1}};
  Box out{inverse(corners[0]).re, inverse(corners[0]).re, inverse(corners[0]).im,
          inverse(corners[0]).im};
  for (const Point& c : corners) {
    const Point q = inverse(c);
    out.x0 = std::min(out.x0, q.re);
    out.x1 = std::max(out.x1, q.re);
    out.y0 = std::min(out.y0, q.im);
    out.y1 = std::max(out.y1, q.im);
  }
  return out;
}

std::optional<std::complex<double>> MapSpec::transport_period(std::complex<double> b) const {
  return std::visit(
      Overloaded{[&](const Identity&) -> std::optional<std::complex<double>> { return b; },
                 [&](const Affine& m) -> std::optional<std::complex<double>> { return m.a * b; },
                 [&](const HorizontalStretch& m) -> std::optional<std::complex<double>> {
                   return std::complex<double>(m.k * b.real(), b.imag());
                 },
                 [&](const PiecewiseAffine& m) -> std::optional<std::complex<double>> {
                   // Only a uniform slope commutes with translations.
                   const bool uniform = std::all_of(m.slopes.begin(), m.slopes.end(),
                                                    [&](double s) { return s == m.slopes[0]; });
                   if (!uniform) return std::nullopt;
                   return std::complex<double>(m.slopes[0] * b.real(), b.imag());
                 }},
      kind_);
}

}  // namespace qctame
