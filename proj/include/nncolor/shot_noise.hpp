#pragma once

#include <span>
#include <vector>

#include "nncolor/rng.hpp"

namespace nncolor {

/// V jumps by theta and decays at rate 1; W jumps by theta^{1/2} and decays at rate 1/2.
/// Jumps arrive at the times of a rate-1 Poisson process, theta ~ Exponential(1).
enum class ShotNoiseKind { V, W };

struct ShotNoiseSummary {
  ShotNoiseKind kind = ShotNoiseKind::V;
  double horizon = 0.0;
  std::size_t jumps = 0;
  /// (1/T) * integral of the path over [0, T].
  double time_average = 0.0;
  std::vector<double> grid_times;
  std::vector<double> grid_values;
  std::vector<double> levels;
  /// Fraction of [0, T] spent strictly above each level.
  std::vector<double> occupation;
};

/// Exact event-driven path from X_0 = 0 on [0, T]. `grid_points` evenly spaced samples are
/// recorded (0 disables). Throws std::domain_error unless T > 0.
ShotNoiseSummary shot_noise_run(ShotNoiseKind kind, double T, RngStream& rng,
                                std::span<const double> levels = {},
                                std::size_t grid_points = 0);

}  // namespace nncolor
