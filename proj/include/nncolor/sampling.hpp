#pragma once

#include <span>
#include <vector>

#include "nncolor/geometry.hpp"
#include "nncolor/rng.hpp"
#include "nncolor/window.hpp"

namespace nncolor {

/// A particle arrival: birth time and position.
struct SpaceTimePoint {
  double t = 0.0;
  Point2 z;
};

/// Homogeneous spatial Poisson process of the given intensity on `w`.
/// Throws std::domain_error for a negative or non-finite rate.
std::vector<Point2> sample_ppp(double rate, const Window& w, RngStream& rng);

/// Space-time Poisson process with mean measure e^t dt dz on (t_lo, t_hi] x w, sorted by time.
/// `t_lo` may be -infinity (the full past). Throws std::domain_error unless t_lo < t_hi.
std::vector<SpaceTimePoint> sample_spacetime_ppp(double t_lo, double t_hi, const Window& w,
                                                 RngStream& rng);

/// Assigns each position a birth time t - E with E i.i.d. Exponential(1).
std::vector<SpaceTimePoint> reverse_lifetimes(std::span<const Point2> positions, double t,
                                              RngStream& rng);

}  // namespace nncolor
