#include "nncolor/window.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nncolor {

Topology parse_topology(std::string_view name) {
  if (name == "torus") return Topology::torus;
  if (name == "plane" || name == "plane-window") return Topology::plane;
  throw std::invalid_argument("unknown topology: " + std::string(name));
}

std::string_view to_string(Topology t) { return t == Topology::torus ? "torus" : "plane"; }

Window::Window(double x_min, double x_max, double y_min, double y_max, Topology topology)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), topology_(topology) {
  if (!(x_min < x_max) || !(y_min < y_max) || !std::isfinite(x_min) || !std::isfinite(x_max) ||
      !std::isfinite(y_min) || !std::isfinite(y_max)) {
    throw std::domain_error("Window: requires finite x_min < x_max and y_min < y_max");
  }
}

bool Window::contains(Point2 p) const {
  return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
}

Point2 Window::wrap(Point2 p) const {
  if (topology_ == Topology::plane) return p;
  auto wrap1 = [](double v, double lo, double span) {
    double r = std::fmod(v - lo, span);
    if (r < 0.0) r += span;
    if (r >= span) r = 0.0;
    return lo + r;
  };
  return {wrap1(p.x, x_min_, width()), wrap1(p.y, y_min_, height())};
}

double Window::distance_squared(Point2 a, Point2 b) const {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (topology_ == Topology::torus) {
    dx = std::fmod(dx, width());
    dy = std::fmod(dy, height());
    dx = std::min(dx, width() - dx);
    dy = std::min(dy, height() - dy);
  }
  return dx * dx + dy * dy;
}

double Window::distance(Point2 a, Point2 b) const { return std::sqrt(distance_squared(a, b)); }

}  // namespace nncolor
