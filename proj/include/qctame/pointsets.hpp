#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "qctame/geometry.hpp"
#include "qctame/set_spec.hpp"

namespace qctame {

/// All points of `set` in the closed window, sorted lexicographically by (re, im).
std::vector<Point> enumerate(const SetSpec& set, const Window& window);

/// All points of `set` in the closed box, sorted lexicographically.
std::vector<Point> enumerate(const SetSpec& set, const Box& box);

/// Distance from `w` to the nearest set point.
///
/// Searches squares of half-side 1, 2, 4, ... around `w` and stops at the first
/// square whose nearest point is no farther than its half-side; every point
/// outside that square is strictly farther.
double nearest_distance(const SetSpec& set, Point w);

/// Nearest set point inside the closed square of half-side `half_side` around
/// `w`, or nullopt if the square holds no set point.
std::optional<double> nearest_distance_in_square(const SetSpec& set, Point w, double half_side);

/// Conjugates the declared translation z -> z + b to z -> z + 1 via g(z) = z / b.
SetSpec normalize_period(const SetSpec& set);

/// Reads a CSV point list ("re,im" per row, optional header) as an Explicit set.
SetSpec load_points(const std::filesystem::path& path);

/// Writes enumerate(set, window) as CSV with a "re,im" header.
void save_points(const SetSpec& set, const Window& window, const std::filesystem::path& path);
void save_points(const std::vector<Point>& points, const std::filesystem::path& path);

/// Parses CSV text; `source` names the input in error messages.
std::vector<Point> parse_points_csv(const std::string& text, const std::string& source = "input");

}  // namespace qctame
