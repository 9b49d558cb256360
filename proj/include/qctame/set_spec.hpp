#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qctame/geometry.hpp"
#include "qctame/map_spec.hpp"

namespace qctame {

/// Declarative description of a closed discrete subset of the plane.
///
/// Built-in families are lattices of horizontal rows Z + i*H for a height set H
/// (Integers, GaussInt, FamilyAs, FamilyAsPrime, Geometric), the shrinking-ring
/// family, an explicit finite list, or the image of another set under a MapSpec.
/// Instances are immutable.
class SetSpec {
 public:
  struct Integers {};                ///< Z
  struct GaussInt {};                ///< Z + iZ
  struct FamilyAs { double s; };     ///< Z + i{+-n^s : n >= 0}
  struct FamilyAsPrime { double s; };///< Z + i{n^s : n >= 0}
  struct Geometric {};               ///< Z + i{2^n : n >= 0}
  /// Z + i * U_{n>=1} {2^n + 2^-(n+1) exp(2 pi i k / n) : 0 <= k < n}
  struct ShrinkingRings {};
  struct Explicit { std::vector<Point> points; };  ///< sorted, pairwise distinct
  struct Mapped {
    std::shared_ptr<const SetSpec> base;
    MapSpec map;
  };
  using Kind = std::variant<Integers, GaussInt, FamilyAs, FamilyAsPrime, Geometric,
                            ShrinkingRings, Explicit, Mapped>;

  static SetSpec integers();
  static SetSpec gauss_int();
  static SetSpec family_as(double s);
  static SetSpec family_as_prime(double s);
  static SetSpec geometric();
  static SetSpec shrinking_rings();
  static SetSpec explicit_points(std::vector<Point> points);
  static SetSpec mapped(const SetSpec& base, MapSpec map);

  const Kind& kind() const { return kind_; }
  /// Short family name used in files and on the command line.
  std::string name() const;

  /// b such that z -> z + b maps the set onto itself, if declared.
  const std::optional<std::complex<double>>& period() const { return period_; }
  /// Whether the quotient by the declared period has infinitely many punctures.
  bool infinite_punctures() const { return infinite_punctures_; }

  /// Copy with a different declared period. A non-null period is checked to be
  /// a symmetry on sample points.
  SetSpec with_period(std::optional<std::complex<double>> period) const;
  SetSpec with_infinite_punctures(bool flag) const;

  /// Row families expose their height set; other kinds return false.
  bool is_row_family() const;

 private:
  explicit SetSpec(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
  std::optional<std::complex<double>> period_;
  bool infinite_punctures_ = false;
};

}  // namespace qctame
