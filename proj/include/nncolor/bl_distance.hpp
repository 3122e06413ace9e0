#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nncolor/forest.hpp"
#include "nncolor/window.hpp"

namespace nncolor {

struct BLDistance {
  double distance = 0.0;
  /// Bound on the change caused by snapping atoms to grid cell centres:
  /// half the cell diagonal times the combined mass.
  double discretization_bound = 0.0;
  std::size_t support1 = 0;
  std::size_t support2 = 0;
};

/// Dual bounded-Lipschitz distance between two finite measures, after snapping atoms to a
/// grid_res x grid_res grid. Computed as the optimal partial transport where moving mass costs
/// min(distance, 2) per unit and unmatched mass costs 1 per unit.
/// Without a window the grid spans the atoms' bounding box and the metric is Euclidean; with a
/// window the grid covers it and the window metric (torus or plane) is used.
/// Throws std::domain_error for grid_res < 2 or negative weights.
BLDistance bl_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int grid_res,
                       std::optional<Window> window = std::nullopt);

/// Minimum-cost transport between supplies and demands of equal total, by successive
/// shortest paths on the dense bipartite graph. Returns the optimal cost.
double transport_cost(std::span<const double> supply, std::span<const double> demand,
                      const std::vector<std::vector<double>>& cost);

}  // namespace nncolor
