#include "nncolor/shot_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nncolor {

ShotNoiseSummary shot_noise_run(ShotNoiseKind kind, double T, RngStream& rng,
                                std::span<const double> levels, std::size_t grid_points) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::domain_error("shot_noise_run: T must be > 0");
  const double decay = kind == ShotNoiseKind::V ? 1.0 : 0.5;

  ShotNoiseSummary out;
  out.kind = kind;
  out.horizon = T;
  out.levels.assign(levels.begin(), levels.end());
  out.occupation.assign(levels.size(), 0.0);
  if (grid_points > 0) {
    out.grid_times.resize(grid_points);
    out.grid_values.resize(grid_points);
    for (std::size_t g = 0; g < grid_points; ++g) {
      out.grid_times[g] = T * static_cast<double>(g) / static_cast<double>(grid_points);
    }
  }

  double t = 0.0;
  double x = 0.0;
  double integral = 0.0;
  std::size_t next_grid = 0;
  while (t < T) {
    const double t_next = t + rng.exponential();
    const double end = std::min(t_next, T);
    const double span = end - t;
    // x(s) = x e^{-decay (s - t)} on [t, end).
    integral += x * (1.0 - std::exp(-decay * span)) / decay;
    for (std::size_t k = 0; k < out.levels.size(); ++k) {
      const double b = out.levels[k];
      if (x > b) {
        const double above = b > 0.0 ? std::log(x / b) / decay : span;
        out.occupation[k] += std::min(above, span);
      }
    }
    while (next_grid < grid_points && out.grid_times[next_grid] < end) {
      out.grid_values[next_grid] = x * std::exp(-decay * (out.grid_times[next_grid] - t));
      ++next_grid;
    }
    if (t_next >= T) break;
    const double theta = rng.exponential();
    x = x * std::exp(-decay * span) + (kind == ShotNoiseKind::V ? theta : std::sqrt(theta));
    t = t_next;
    ++out.jumps;
  }
  out.time_average = integral / T;
  for (double& occ : out.occupation) occ /= T;
  return out;
}

}  // namespace nncolor
