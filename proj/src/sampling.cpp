#include "nncolor/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nncolor {

namespace {

Point2 uniform_point(const Window& w, RngStream& rng) {
  return {rng.uniform(w.x_min(), w.x_max()), rng.uniform(w.y_min(), w.y_max())};
}

}  // namespace

std::vector<Point2> sample_ppp(double rate, const Window& w, RngStream& rng) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("sample_ppp: rate must be finite and >= 0");
  }
  const auto count = rng.poisson(rate * w.area());
  std::vector<Point2> points;
  points.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) points.push_back(uniform_point(w, rng));
  return points;
}

std::vector<SpaceTimePoint> sample_spacetime_ppp(double t_lo, double t_hi, const Window& w,
                                                 RngStream& rng) {
  if (!(t_lo < t_hi) || !std::isfinite(t_hi)) {
    throw std::domain_error("sample_spacetime_ppp: requires t_lo < t_hi with t_hi finite");
  }
  const bool full_past = std::isinf(t_lo);
  const double mass_lo = full_past ? 0.0 : std::exp(t_lo);
  const double mass_hi = std::exp(t_hi);
  const auto count = rng.poisson((mass_hi - mass_lo) * w.area());
  std::vector<SpaceTimePoint> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const double u = rng.uniform();
    // Inverse of the CDF (e^t - e^{t_lo}) / (e^{t_hi} - e^{t_lo}).
    const double t = full_past ? t_hi + std::log(u) : std::log(mass_lo + u * (mass_hi - mass_lo));
    out.push_back({std::min(t, t_hi), uniform_point(w, rng)});
  }
  std::sort(out.begin(), out.end(),
            [](const SpaceTimePoint& a, const SpaceTimePoint& b) { return a.t < b.t; });
  return out;
}

std::vector<SpaceTimePoint> reverse_lifetimes(std::span<const Point2> positions, double t,
                                              RngStream& rng) {
  std::vector<SpaceTimePoint> out;
  out.reserve(positions.size());
  for (const Point2& z : positions) out.push_back({t - rng.exponential(), z});
  return out;
}

}  // namespace nncolor
