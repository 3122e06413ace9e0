#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nncolor/ea.hpp"

namespace nncolor {

struct Coalescence {
  std::size_t step = 0;
  double time = 0.0;
  Point2 position;
};

/// Two excluded-area chains sharing one excluded region C1 u C2. The component with the
/// smaller tau advances; the other component's head is planted as a candidate nearest point.
struct CoupledEAState {
  EAState comp1;
  EAState comp2;
  double t0_offset = 0.0;
  std::size_t step = 0;
  std::optional<Coalescence> coalesced;
};

/// Component 1 starts at z1 with tau = Exp(1) - t0, component 2 at z2 with tau = Exp(1).
/// Throws std::domain_error for t0 < 0.
CoupledEAState coupled_init(Point2 z1, Point2 z2, double t0, RngStream& rng,
                            EAOptions options = {.area_samples = 0, .exact_area = false});

/// Advances the lagging component, or records coalescence when the planted head of the
/// other component is strictly nearer than every point off C1 u C2.
/// Throws std::domain_error after coalescence.
void coupled_step(CoupledEAState& s, RngStream& rng);

struct CoalescenceRecord {
  bool censored = false;
  std::size_t steps = 0;
  /// Coalescence time, or min(tau1, tau2) reached at the timeout.
  double time = 0.0;
  /// Coalescence position, or the head of the lagging component at the timeout.
  Point2 position;
};

/// Runs coupled_step until coalescence or `max_steps` steps; a timeout is a censored record.
CoalescenceRecord coupled_run(CoupledEAState& s, std::size_t max_steps, RngStream& rng);

struct ProbabilityEstimate {
  double p = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo probability that, for a rate-lambda Poisson process and points z1, z2 at
/// distance d, the point nearest z1 is also nearest z2 and lies farther than r from both.
ProbabilityEstimate lzz_event_mc(double d, double r, double lambda, std::size_t trials,
                                 RngStream& rng);

/// The lower bound exp(-lambda pi (r + d)^2) - 2 c0 lambda^{1/2} d on that probability.
double lzz_bound(double d, double r, double lambda, double c0);

struct GapDensity {
  double bin_width = 0.0;
  std::vector<double> density;  ///< histogram density of D2 - D1
  double max_density = 0.0;
  double mean_gap = 0.0;
};

/// Histogram density of D2 - D1, the gap between the distances from a fixed point to the two
/// nearest points of a rate-lambda Poisson process, by direct simulation.
GapDensity gap_density(double lambda, std::size_t trials, double bin_width, double max_gap,
                       RngStream& rng);

}  // namespace nncolor
