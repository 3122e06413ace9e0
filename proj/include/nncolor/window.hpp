#pragma once

#include <string_view>

#include "nncolor/geometry.hpp"

namespace nncolor {

enum class Topology { plane, torus };

Topology parse_topology(std::string_view name);
std::string_view to_string(Topology t);

/// Rectangular simulation window. In torus mode opposite edges are identified and
/// distances use the wrap-around metric.
class Window {
 public:
  Window(double x_min, double x_max, double y_min, double y_max, Topology topology);

  static Window unit_square(Topology topology = Topology::torus) {
    return Window(0.0, 1.0, 0.0, 1.0, topology);
  }
  static Window square(double side, Topology topology = Topology::torus) {
    return Window(0.0, side, 0.0, side, topology);
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }
  double area() const { return width() * height(); }
  Topology topology() const { return topology_; }
  bool is_torus() const { return topology_ == Topology::torus; }

  bool contains(Point2 p) const;
  /// Maps a point into the fundamental domain (torus) or returns it unchanged (plane).
  Point2 wrap(Point2 p) const;
  double distance_squared(Point2 a, Point2 b) const;
  double distance(Point2 a, Point2 b) const;

 private:
  double x_min_, x_max_, y_min_, y_max_;
  Topology topology_;
};

}  // namespace nncolor
