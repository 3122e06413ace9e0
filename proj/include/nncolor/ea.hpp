#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "nncolor/geometry.hpp"
#include "nncolor/rng.hpp"

namespace nncolor {

/// One step of an excluded-area chain.
///
/// `area_inc`/`area_se` are the Monte Carlo measurement of area(C_i) - area(C_{i-1})
/// (NaN when disabled). `area` is the boundary-integrated area of C_i and
/// `theta = e^{-rate_tau} * (area_i - area_{i-1})` the matching Exponential(1) draw
/// (NaN when exact areas are disabled). `rate_tau` is the time that set the Poisson rate for
/// this step, i.e. tau_{i-1}.
struct TraceRow {
  std::size_t step = 0;
  double tau = 0.0;
  Point2 z;
  double area_inc = 0.0;
  double area_se = 0.0;
  double area = 0.0;
  double theta = 0.0;
  double rate_tau = 0.0;
  double diam = 0.0;
};

struct EAOptions {
  /// Monte Carlo samples per step for the area increment; 0 disables the measurement.
  std::size_t area_samples = 4000;
  /// Track the boundary-integrated area of C (quadratic in the step count).
  bool exact_area = true;
};

/// State (C, z, tau) of the excluded-area chain plus its trace.
struct EAState {
  DiscUnion C;
  Point2 z;
  double tau = 0.0;
  std::size_t step = 0;
  double diam = 0.0;
  double area = 0.0;
  EAOptions options;
  std::vector<TraceRow> trace;
};

/// Initial state ({z0}, z0, tau0) with tau0 ~ Exponential(1).
EAState ea_init(Point2 z0, RngStream& rng, EAOptions options = {});

/// Exact sample of the point nearest to z of a rate-`rate` Poisson process on the complement
/// of the union of `excluded`. Points are generated annulus by annulus around z; the search
/// stops once the best accepted distance is no larger than the next annulus's inner radius.
/// When `cutoff` is finite and no point lies within that distance, returns nullopt.
/// Throws std::domain_error for a non-positive rate.
std::optional<Point2> nearest_in_complement(
    Point2 z, std::span<const DiscUnion* const> excluded, double rate, RngStream& rng,
    double cutoff = std::numeric_limits<double>::infinity());

Point2 nearest_in_complement(Point2 z, const DiscUnion& C, double rate, RngStream& rng);

/// Moves the head to `next`: C <- C u disc(z, |next - z|), tau <- tau + Exp(1), appends a trace row.
void ea_extend(EAState& s, Point2 next, RngStream& rng);

/// One step of the chain: the nearest point of a rate e^{-tau} process off C becomes the new head.
void ea_step(EAState& s, RngStream& rng);

/// Steps until tau >= t; afterwards s.step == N(t) + 1 where N(t) = max{i : tau_i < t}.
void ea_run_until(EAState& s, double t, RngStream& rng);

/// Sample of 2 pi^{-1/2} sum_u u e^{-sigma_u} eta_u^{1/2}, truncated once the remainder bound
/// 2 pi^{-1/2} e^{-sigma_u} (u + 2) drops below 1e-12 of the partial sum.
double chi_sample(RngStream& rng);

/// Fraction of [0, T] covered by the intervals [tau_{i-1}, tau_i) with
/// e^{-tau_i / 2} diam(C_i) > b. Throws std::domain_error unless the trace reaches T.
double occupation_bad_fraction(std::span<const TraceRow> trace, double b, double T);

}  // namespace nncolor
