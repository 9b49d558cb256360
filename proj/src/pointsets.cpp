#include "qctame/pointsets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "qctame/error.hpp"
#include "qctame/format.hpp"

namespace qctame {

namespace {

// Height set H of a row family Z + iH.
class Heights {
 public:
  explicit Heights(const SetSpec::Kind& kind) : kind_(kind) {}

  // Heights in [y0, y1], ascending. Level generation stops one level past y1.
  std::vector<double> in_range(double y0, double y1) const {
    std::vector<double> out;
    if (y1 < y0) return out;
    if (std::holds_alternative<SetSpec::Integers>(kind_)) {
      if (y0 <= 0.0 && 0.0 <= y1) out.push_back(0.0);
    } else if (std::holds_alternative<SetSpec::GaussInt>(kind_)) {
      for (double k = std::ceil(y0); k <= y1; k += 1.0) out.push_back(k + 0.0);
    } else if (const auto* as = std::get_if<SetSpec::FamilyAs>(&kind_)) {
      append_powers(out, as->s, -y1, -y0, /*negate=*/true);
      append_powers(out, as->s, y0, y1, /*negate=*/false);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    } else if (const auto* ap = std::get_if<SetSpec::FamilyAsPrime>(&kind_)) {
      append_powers(out, ap->s, y0, y1, false);
    } else if (std::holds_alternative<SetSpec::Geometric>(kind_)) {
      if (y1 >= 1.0) {
        const int top = static_cast<int>(std::floor(std::log2(y1))) + 1;
        for (int n = 0; n <= top; ++n) {
          const double h = std::ldexp(1.0, n);
          if (h >= y0 && h <= y1) out.push_back(h);
        }
      }
    }
    return out;
  }

  // Height closest to y (ties resolved toward the lower one).
  double nearest(double y) const {
    if (std::holds_alternative<SetSpec::Integers>(kind_)) return 0.0;
    if (std::holds_alternative<SetSpec::GaussInt>(kind_)) return std::round(y) + 0.0;
    std::vector<double> candidates;
    if (const auto* as = std::get_if<SetSpec::FamilyAs>(&kind_)) {
      const double sign = y < 0.0 ? -1.0 : 1.0;
      for (double n : power_neighbours(as->s, std::abs(y))) candidates.push_back(sign * std::pow(n, as->s) + 0.0);
      candidates.push_back(-sign);
    } else if (const auto* ap = std::get_if<SetSpec::FamilyAsPrime>(&kind_)) {
      for (double n : power_neighbours(ap->s, std::max(y, 0.0))) candidates.push_back(std::pow(n, ap->s));
    } else if (std::holds_alternative<SetSpec::Geometric>(kind_)) {
      if (y <= 1.0) return 1.0;
      const int n0 = static_cast<int>(std::floor(std::log2(y)));
      for (int n = std::max(0, n0 - 1); n <= n0 + 2; ++n) candidates.push_back(std::ldexp(1.0, n));
    }
    double best = candidates.front();
    for (double h : candidates) {
      const double dh = std::abs(h - y);
      const double db = std::abs(best - y);
      if (dh < db || (dh == db && h < best)) best = h;
    }
    return best;
  }

 private:
  // Appends n^s (n >= 0) lying in [lo, hi]; negated when `negate`.
  static void append_powers(std::vector<double>& out, double s, double lo, double hi, bool negate) {
    if (hi < 0.0) return;
    const double nlo = std::max(0.0, std::floor(std::pow(std::max(lo, 0.0), 1.0 / s)) - 1.0);
    const double nhi = std::floor(std::pow(hi, 1.0 / s)) + 1.0;
    for (double n = nlo; n <= nhi; n += 1.0) {
      const double h = std::pow(n, s);
      if (h >= lo && h <= hi) out.push_back(negate ? -h + 0.0 : h);
    }
  }

  static std::vector<double> power_neighbours(double s, double t) {
    const double n0 = std::floor(std::pow(t, 1.0 / s));
    std::vector<double> out;
    for (double n = std::max(0.0, n0 - 1.0); n <= n0 + 2.0; n += 1.0) out.push_back(n);
    return out;
  }

  const SetSpec::Kind& kind_;
};

// Ring n of the shrinking-ring family: 2^n + 2^-(n+1) e^{2 pi i k / n}, times i.
struct RingPoint {
  double dx;  // offset from the integer shift
  double y;
};

RingPoint ring_point(int n, int k) {
  const double radius = std::ldexp(1.0, -(n + 1));
  const double theta = 2.0 * std::numbers::pi * k / n;
  // i * (2^n + radius * e^{i theta}) = -radius sin(theta) + i (2^n + radius cos(theta))
  return {-radius * std::sin(theta) + 0.0, std::ldexp(1.0, n) + radius * std::cos(theta)};
}

// Ring levels whose band [2^n - r, 2^n + r] meets [y0, y1].
std::pair<int, int> ring_levels(double y0, double y1) {
  if (y1 < 2.0 - 0.25) return {1, 0};
  const int top = static_cast<int>(std::floor(std::log2(y1 + 0.25))) + 1;
  int bottom = 1;
  if (y0 > 2.0) bottom = std::max(1, static_cast<int>(std::floor(std::log2(y0 - 0.25))));
  return {bottom, std::min(top, 1100)};
}

void enumerate_box_into(const SetSpec& set, const Box& box, std::vector<Point>& out) {
  if (box.empty()) return;
  const auto& kind = set.kind();
  if (set.is_row_family()) {
    const auto heights = Heights(kind).in_range(box.y0, box.y1);
    const double k0 = std::ceil(box.x0);
    const double k1 = std::floor(box.x1);
    for (double k = k0; k <= k1; k += 1.0) {
      for (double h : heights) out.push_back({k + 0.0, h});
    }
    return;
  }
  if (std::holds_alternative<SetSpec::ShrinkingRings>(kind)) {
    const auto [n0, n1] = ring_levels(box.y0, box.y1);
    const double m0 = std::ceil(box.x0 - 0.25);
    const double m1 = std::floor(box.x1 + 0.25);
    for (int n = n0; n <= n1; ++n) {
      for (int k = 0; k < n; ++k) {
        const RingPoint rp = ring_point(n, k);
        if (rp.y < box.y0 || rp.y > box.y1) continue;
        for (double m = m0; m <= m1; m += 1.0) {
          const Point p{m + rp.dx, rp.y};
          if (box.contains(p)) out.push_back(p);
        }
      }
    }
    return;
  }
  if (const auto* ex = std::get_if<SetSpec::Explicit>(&kind)) {
    auto it = std::lower_bound(ex->points.begin(), ex->points.end(), Point{box.x0, -std::numeric_limits<double>::infinity()});
    for (; it != ex->points.end() && it->re <= box.x1; ++it) {
      if (box.contains(*it)) out.push_back(*it);
    }
    return;
  }
  const auto& mp = std::get<SetSpec::Mapped>(kind);
  std::vector<Point> base_points;
  enumerate_box_into(*mp.base, mp.map.preimage_bounds(box), base_points);
  for (const Point& b : base_points) {
    const Point p = mp.map.apply(b);
    const Point clean{p.re + 0.0, p.im + 0.0};
    if (box.contains(clean)) out.push_back(clean);
  }
}

}  // namespace

std::vector<Point> enumerate(const SetSpec& set, const Box& box) {
  std::vector<Point> out;
  enumerate_box_into(set, box, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point> enumerate(const SetSpec& set, const Window& window) {
  std::vector<Point> out;
  enumerate_box_into(set, window.bounds(), out);
  std::erase_if(out, [&](const Point& p) { return !window.contains(p); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<double> nearest_distance_in_square(const SetSpec& set, Point w, double half_side) {
  const Box box{w.re - half_side, w.re + half_side, w.im - half_side, w.im + half_side};
  const auto& kind = set.kind();
  if (set.is_row_family()) {
    // Every row holds every integer, so the nearest point uses the nearest row
    // and the nearest integer independently.
    const double k = std::round(w.re);
    const double h = Heights(kind).nearest(w.im);
    if (!box.contains({k, h})) return std::nullopt;
    return std::hypot(w.re - k, w.im - h);
  }
  if (std::holds_alternative<SetSpec::ShrinkingRings>(kind)) {
    const auto [n0, n1] = ring_levels(box.y0, box.y1);
    std::optional<double> best;
    for (int n = n0; n <= n1; ++n) {
      for (int k = 0; k < n; ++k) {
        const RingPoint rp = ring_point(n, k);
        // For a fixed ring point the nearest integer shift is round(x - dx).
        const Point p{std::round(w.re - rp.dx) + rp.dx, rp.y};
        if (!box.contains(p)) continue;
        const double dist = distance(p, w);
        if (!best || dist < *best) best = dist;
      }
    }
    return best;
  }
  std::vector<Point> pts;
  enumerate_box_into(set, box, pts);
  std::optional<double> best;
  for (const Point& p : pts) {
    const double dist = distance(p, w);
    if (!best || dist < *best) best = dist;
  }
  return best;
}

double nearest_distance(const SetSpec& set, Point w) {
  for (double half_side = 1.0;; half_side *= 2.0) {
    const auto found = nearest_distance_in_square(set, w, half_side);
    if (found && *found <= half_side) return *found;
    if (!std::isfinite(half_side)) throw Error("nearest-point search diverged");
  }
}

SetSpec normalize_period(const SetSpec& set) {
  if (!set.period()) throw InvalidArgument("set has no declared translation symmetry");
  const std::complex<double> b = *set.period();
  if (b == std::complex<double>(1.0, 0.0)) return set;  // g is the identity
  const bool punctures = set.infinite_punctures();
  SetSpec image = SetSpec::mapped(set, MapSpec::affine(1.0 / b, 0.0));
  // (1/b) * b may round away from 1; the conjugated symmetry is exactly z + 1.
  SetSpec out = image.with_period(std::complex<double>(1.0, 0.0));
  return punctures ? out.with_infinite_punctures(true) : out;
}

std::vector<Point> parse_points_csv(const std::string& text, const std::string& source) {
  std::vector<Point> points;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto parse_field = [&](std::string_view field, double& value) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    return res.ec == std::errc() && res.ptr == field.data() + field.size() && std::isfinite(value);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line == "re,im") continue;
    const auto comma = line.find(',');
    double re = 0.0;
    double im = 0.0;
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos ||
        !parse_field(std::string_view(line).substr(0, comma), re) ||
        !parse_field(std::string_view(line).substr(comma + 1), im)) {
      throw InvalidArgument(source + ": malformed row at line " + std::to_string(line_no));
    }
    points.push_back({re, im});
  }
  return points;
}

SetSpec load_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto points = parse_points_csv(buffer.str(), path.string());
  return SetSpec::explicit_points(std::move(points));
}

void save_points(const std::vector<Point>& points, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "re,im\n";
  for (const Point& p : points) {
    out << format_double(p.re) << ',' << format_double(p.im) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void save_points(const SetSpec& set, const Window& window, const std::filesystem::path& path) {
  save_points(enumerate(set, window), path);
}

}  // namespace qctame
