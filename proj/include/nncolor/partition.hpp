#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nncolor/forest.hpp"
#include "nncolor/grid_index.hpp"
#include "nncolor/rng.hpp"

namespace nncolor {

struct CellEntry {
  Point2 z;
  /// Cell weight in pixel units; area = pixels * pixel_area.
  std::int64_t pixels = 0;
};

/// Live particles with the weight of their cells, plus a nearest-survivor index.
class CellMap {
 public:
  CellMap(Window window, double pixel_area);

  void add(ParticleId id, Point2 z, std::int64_t pixels);

  const Window& window() const { return window_; }
  double pixel_area() const { return pixel_area_; }
  std::size_t live_count() const { return cells_.size(); }
  const std::map<ParticleId, CellEntry>& cells() const { return cells_; }
  const CellEntry& cell(ParticleId id) const;
  bool is_live(ParticleId id) const { return cells_.contains(id); }
  std::int64_t total_pixels() const;
  double area(ParticleId id) const { return cell(id).pixels * pixel_area_; }

  /// Survivor that now owns the region originally labelled `label` (follows merges).
  ParticleId owner_of(ParticleId label) const;

 private:
  friend struct MergeAccess;
  Window window_;
  double pixel_area_;
  std::map<ParticleId, CellEntry> cells_;
  GridIndex index_;
  std::map<ParticleId, ParticleId> absorbed_by_;
};

struct MergeEvent {
  double time = 0.0;
  ParticleId deleted = 0;
  ParticleId absorber = 0;
  double area = 0.0;
};

/// Cells of the time-t1 particles, weighted by their pixel counts in `raster`. Every time-t1
/// particle is live (possibly with zero weight). Throws std::domain_error if a label is not a
/// time-t1 particle.
CellMap init_cells(const Forest& f, double t1, const PartitionRaster& raster);

/// Deletes `deleted` and hands its cell to the nearest survivor (ties to the smallest id).
/// Throws std::domain_error if `deleted` is not live or is the last particle.
MergeEvent merge_step(CellMap& cells, ParticleId deleted, double time = 0.0);

struct ReverseRunResult {
  CellMap cells;
  std::vector<MergeEvent> events;
};

/// Reversed-time dynamics from t_from down to t_to: every live particle gets an independent
/// Exponential(1) clock, and at each deletion its cell merges into the nearest survivor. Stops
/// at t_to or when one particle remains. Throws std::domain_error for an empty map or
/// t_to >= t_from.
ReverseRunResult reverse_run(CellMap cells, double t_from, double t_to, RngStream& rng);

/// (id, area fraction) sorted by decreasing fraction.
std::vector<std::pair<ParticleId, double>> cell_area_profile(const CellMap& cells);

/// Raster relabelled with the current owner of every original label.
PartitionRaster relabel(const PartitionRaster& raster, const CellMap& cells);

}  // namespace nncolor
