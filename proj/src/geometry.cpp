#include "nncolor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "nncolor/rng.hpp"

namespace nncolor {

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double distance_squared(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Disc::Disc(Point2 center, double radius) : center_(center), radius_(radius) {
  if (!is_finite(center)) throw std::domain_error("Disc: non-finite center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::domain_error("Disc: radius must be finite and >= 0");
  }
}

double Disc::area() const { return std::numbers::pi * radius_ * radius_; }

bool Disc::contains(Point2 p) const {
  return distance_squared(p, center_) <= radius_ * radius_;
}

DiscUnion::DiscUnion(std::vector<Disc> discs) {
  for (const auto& d : discs) add(d);
}

void DiscUnion::add(const Disc& d) {
  const Point2 c = d.center();
  const double r = d.radius();
  const BoundingBox box{c.x - r, c.x + r, c.y - r, c.y + r};
  if (discs_.empty()) {
    total_ = box;
  } else {
    total_.x_min = std::min(total_.x_min, box.x_min);
    total_.x_max = std::max(total_.x_max, box.x_max);
    total_.y_min = std::min(total_.y_min, box.y_min);
    total_.y_max = std::max(total_.y_max, box.y_max);
  }
  discs_.push_back(d);
  boxes_.push_back(box);
}

bool DiscUnion::contains_prefix(Point2 p, std::size_t prefix_len) const {
  const std::size_t n = std::min(prefix_len, discs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const BoundingBox& b = boxes_[i];
    if (p.x < b.x_min || p.x > b.x_max || p.y < b.y_min || p.y > b.y_max) continue;
    if (discs_[i].contains(p)) return true;
  }
  return false;
}

bool DiscUnion::contains(Point2 p) const {
  if (discs_.empty()) return false;
  if (p.x < total_.x_min || p.x > total_.x_max || p.y < total_.y_min || p.y > total_.y_max) {
    return false;
  }
  return contains_prefix(p, discs_.size());
}

BoundingBox DiscUnion::bounds() const {
  if (discs_.empty()) throw std::domain_error("DiscUnion::bounds: empty union");
  return total_;
}

bool contains(const DiscUnion& du, Point2 p) { return du.contains(p); }

double du_diameter(const DiscUnion& du) {
  if (du.empty()) throw std::domain_error("du_diameter: empty union");
  const auto discs = du.discs();
  double best = 0.0;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    best = std::max(best, 2.0 * discs[i].radius());
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      best = std::max(best, distance(discs[i].center(), discs[j].center()) +
                                discs[i].radius() + discs[j].radius());
    }
  }
  return best;
}

namespace {

// Agresti-Coull standard error of a hit fraction; unlike the Wald form it stays positive
// when every sample lands on the same side.
double fraction_se(std::size_t hits, std::size_t n_samples) {
  const double n = static_cast<double>(n_samples) + 4.0;
  const double p = (static_cast<double>(hits) + 2.0) / n;
  return std::sqrt(p * (1.0 - p) / n);
}

}  // namespace

AreaEstimate du_area_mc(const DiscUnion& du, std::size_t n_samples, RngStream& rng) {
  if (du.empty()) throw std::domain_error("du_area_mc: empty union");
  if (n_samples == 0) throw std::domain_error("du_area_mc: n_samples must be >= 1");
  const BoundingBox box = du.bounds();
  const double box_area = box.area();
  if (box_area <= 0.0) return {0.0, 0.0};
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const Point2 p{rng.uniform(box.x_min, box.x_max), rng.uniform(box.y_min, box.y_max)};
    if (du.contains(p)) ++hits;
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
  return {box_area * p_hat, box_area * fraction_se(hits, n_samples)};
}

AreaEstimate disc_increment_mc(const DiscUnion& base, const Disc& added, std::size_t n_samples,
                               RngStream& rng) {
  if (n_samples == 0) throw std::domain_error("disc_increment_mc: n_samples must be >= 1");
  const double disc_area = added.area();
  if (disc_area <= 0.0) return {0.0, 0.0};
  const Point2 c = added.center();
  const double r = added.radius();
  std::size_t outside = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double rho = r * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const Point2 p{c.x + rho * std::cos(phi), c.y + rho * std::sin(phi)};
    if (!base.contains(p)) ++outside;
  }
  const double p_hat = static_cast<double>(outside) / static_cast<double>(n_samples);
  return {disc_area * p_hat, disc_area * fraction_se(outside, n_samples)};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Arc (a, b) of circle (c, r), counter-clockwise: contribution to (1/2) \oint x dy - y dx.
double arc_term(Point2 c, double r, double a, double b) {
  return 0.5 * (r * r * (b - a) + c.x * r * (std::sin(b) - std::sin(a)) -
                c.y * r * (std::cos(b) - std::cos(a)));
}

}  // namespace

double du_area_exact(const DiscUnion& du) {
  if (du.empty()) return 0.0;
  const auto src = du.discs();
  // Translate to the first center; keeps the boundary terms well conditioned.
  const Point2 origin = src.front().center();
  std::vector<Point2> centers;
  std::vector<double> radii;
  centers.reserve(src.size());
  radii.reserve(src.size());
  for (const auto& d : src) {
    centers.push_back({d.center().x - origin.x, d.center().y - origin.y});
    radii.push_back(d.radius());
  }
  const std::size_t n = src.size();
  const double scale_eps = 1e-12;

  double area = 0.0;
  std::vector<std::pair<double, double>> covered;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = radii[i];
    if (ri <= 0.0) continue;
    const double eps = scale_eps * ri;
    bool hidden = false;
    covered.clear();
    for (std::size_t j = 0; j < n && !hidden; ++j) {
      if (j == i || radii[j] <= 0.0) continue;
      const double rj = radii[j];
      const double d = distance(centers[i], centers[j]);
      const bool identical = d <= eps && std::abs(ri - rj) <= eps;
      if (identical) {
        if (j < i) hidden = true;
        continue;
      }
      if (d + ri <= rj + eps) {
        hidden = true;
        continue;
      }
      if (d >= ri + rj || d + rj <= ri) continue;
      const double alpha = std::atan2(centers[j].y - centers[i].y, centers[j].x - centers[i].x);
      const double cos_beta = std::clamp((ri * ri + d * d - rj * rj) / (2.0 * ri * d), -1.0, 1.0);
      const double beta = std::acos(cos_beta);
      double start = std::fmod(alpha - beta, kTwoPi);
      if (start < 0.0) start += kTwoPi;
      const double end = start + 2.0 * beta;
      if (end > kTwoPi) {
        covered.emplace_back(start, kTwoPi);
        covered.emplace_back(0.0, end - kTwoPi);
      } else {
        covered.emplace_back(start, end);
      }
    }
    if (hidden) continue;
    std::sort(covered.begin(), covered.end());
    double cursor = 0.0;
    for (const auto& [a, b] : covered) {
      if (a > cursor) area += arc_term(centers[i], ri, cursor, a);
      cursor = std::max(cursor, b);
    }
    if (cursor < kTwoPi) area += arc_term(centers[i], ri, cursor, kTwoPi);
  }
  return area;
}

bool isodiametric_holds(const DiscUnion& du, double area, std::optional<double> area_se) {
  const double diam = du_diameter(du);
  // Rounding grows with the magnitude; equality (a single disc) must not read as a violation.
  const double rounding = kGeometryTolerance + 1e-12 * std::abs(area);
  const double tol = area_se ? 3.0 * *area_se + rounding : rounding;
  return area <= std::numbers::pi / 4.0 * diam * diam + tol;
}

double lc1_bound(double diam_C, double area_C, double area_CD) {
  if (diam_C < 0.0 || area_C < 0.0) throw std::domain_error("lc1_bound: negative input");
  // Rounding in computed areas may leave area_CD a hair below area_C.
  if (area_CD < area_C - (kGeometryTolerance + 1e-12 * area_C)) {
    throw std::domain_error("lc1_bound: area_CD < area_C");
  }
  const double gain = std::max(0.0, area_CD - area_C);
  const double extend = diam_C + std::sqrt(2.0 * gain / std::numbers::pi);
  const double whole = std::sqrt(4.0 * area_CD / std::numbers::pi);
  return std::max(extend, whole);
}

}  // namespace nncolor
