#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nncolor {

class RngStream;

/// Absolute tolerance used by the exact geometric predicates.
inline constexpr double kGeometryTolerance = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

bool is_finite(Point2 p);

/// Euclidean distance.
double distance(Point2 a, Point2 b);
double distance_squared(Point2 a, Point2 b);

/// Closed disc. Throws std::domain_error on a negative or non-finite radius.
class Disc {
 public:
  Disc(Point2 center, double radius);

  Point2 center() const { return center_; }
  double radius() const { return radius_; }
  double area() const;
  bool contains(Point2 p) const;

 private:
  Point2 center_;
  double radius_;
};

struct BoundingBox {
  double x_min, x_max, y_min, y_max;
  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

/// Finite union of closed discs, kept in insertion order.
class DiscUnion {
 public:
  DiscUnion() = default;
  explicit DiscUnion(std::vector<Disc> discs);

  void add(const Disc& d);

  std::span<const Disc> discs() const { return discs_; }
  std::size_t size() const { return discs_.size(); }
  bool empty() const { return discs_.empty(); }
  const Disc& back() const { return discs_.back(); }

  bool contains(Point2 p) const;
  /// Membership in the union of the first `prefix_len` discs.
  bool contains_prefix(Point2 p, std::size_t prefix_len) const;
  /// Throws std::domain_error when empty.
  BoundingBox bounds() const;

 private:
  std::vector<Disc> discs_;
  // Per-disc axis-aligned boxes; a cheap reject before the distance test.
  std::vector<BoundingBox> boxes_;
  BoundingBox total_{0, 0, 0, 0};
};

bool contains(const DiscUnion& du, Point2 p);

/// Exact diameter of a finite union of discs. Throws std::domain_error when empty.
double du_diameter(const DiscUnion& du);

struct AreaEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Hit-or-miss Monte Carlo area over the bounding box of the union.
AreaEstimate du_area_mc(const DiscUnion& du, std::size_t n_samples, RngStream& rng);

/// Monte Carlo estimate of area(added \ base), sampling uniformly inside `added`.
/// Both estimators report the Agresti-Coull standard error, which is positive even with no hits.
AreaEstimate disc_increment_mc(const DiscUnion& base, const Disc& added, std::size_t n_samples,
                               RngStream& rng);

/// Area of a union of discs by integrating x dy - y dx over the uncovered boundary arcs.
/// Exact up to floating point; O(n^2 log n).
double du_area_exact(const DiscUnion& du);

/// Isodiametric inequality check: area <= (pi/4) diam^2 + tol, with tol = 3 * area_se (plus rounding) when the
/// area is a Monte Carlo estimate and kGeometryTolerance (plus 1e-12 relative) otherwise.
bool isodiametric_holds(const DiscUnion& du, double area, std::optional<double> area_se = {});

/// Upper bound on diam(C u D) for a disc D centred in C:
/// max(diam_C + sqrt(2 (area_CD - area_C) / pi), sqrt(4 area_CD / pi)).
/// Throws std::domain_error when area_CD < area_C beyond rounding or an input is negative.
double lc1_bound(double diam_C, double area_C, double area_CD);

}  // namespace nncolor
