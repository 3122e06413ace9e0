#include "nncolor/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace nncolor {

struct MergeAccess {
  static GridIndex& index(CellMap& c) { return c.index_; }
  static std::map<ParticleId, CellEntry>& cells(CellMap& c) { return c.cells_; }
  static std::map<ParticleId, ParticleId>& absorbed(CellMap& c) { return c.absorbed_by_; }
};

CellMap::CellMap(Window window, double pixel_area)
    : window_(window), pixel_area_(pixel_area), index_(window) {
  if (!(pixel_area > 0.0)) throw std::domain_error("CellMap: pixel area must be positive");
}

void CellMap::add(ParticleId id, Point2 z, std::int64_t pixels) {
  if (pixels < 0) throw std::domain_error("CellMap::add: negative weight");
  if (cells_.contains(id)) throw std::domain_error("CellMap::add: duplicate id");
  index_.insert(id, z);
  cells_.emplace(id, CellEntry{index_.position(id), pixels});
}

const CellEntry& CellMap::cell(ParticleId id) const {
  const auto it = cells_.find(id);
  if (it == cells_.end()) throw std::domain_error("CellMap: id not live");
  return it->second;
}

std::int64_t CellMap::total_pixels() const {
  std::int64_t total = 0;
  for (const auto& kv : cells_) total += kv.second.pixels;
  return total;
}

ParticleId CellMap::owner_of(ParticleId label) const {
  auto it = absorbed_by_.find(label);
  while (it != absorbed_by_.end()) {
    label = it->second;
    it = absorbed_by_.find(label);
  }
  return label;
}

CellMap init_cells(const Forest& f, double t1, const PartitionRaster& raster) {
  CellMap cells(f.window, raster.pixel_area());
  const auto counts = label_pixel_counts(raster);
  for (const auto& [label, n] : counts) {
    if (label >= f.size() || f.particles[label].t > t1) {
      throw std::domain_error("init_cells: raster label is not a time-t1 particle");
    }
  }
  for (const Particle& p : f.particles) {
    if (p.t > t1) continue;
    const auto it = counts.find(p.id);
    cells.add(p.id, p.z, it == counts.end() ? 0 : it->second);
  }
  return cells;
}

MergeEvent merge_step(CellMap& cells, ParticleId deleted, double time) {
  auto& live = MergeAccess::cells(cells);
  const auto it = live.find(deleted);
  if (it == live.end()) throw std::domain_error("merge_step: particle not live");
  if (live.size() < 2) throw std::domain_error("merge_step: cannot delete the last particle");
  auto& index = MergeAccess::index(cells);
  const CellEntry gone = it->second;
  index.remove(deleted);
  live.erase(it);
  const ParticleId absorber = index.nearest(gone.z)->id;
  live.at(absorber).pixels += gone.pixels;
  MergeAccess::absorbed(cells)[deleted] = absorber;
  return {time, deleted, absorber, static_cast<double>(gone.pixels) * cells.pixel_area()};
}

ReverseRunResult reverse_run(CellMap cells, double t_from, double t_to, RngStream& rng) {
  if (cells.live_count() == 0) throw std::domain_error("reverse_run: empty cell map");
  if (!(t_to < t_from)) throw std::domain_error("reverse_run: requires t_to < t_from");
  std::vector<std::pair<double, ParticleId>> clocks;
  clocks.reserve(cells.live_count());
  for (const auto& kv : cells.cells()) clocks.emplace_back(t_from - rng.exponential(), kv.first);
  std::sort(clocks.begin(), clocks.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  ReverseRunResult out{std::move(cells), {}};
  for (const auto& [when, id] : clocks) {
    if (when <= t_to || out.cells.live_count() <= 1) break;
    out.events.push_back(merge_step(out.cells, id, when));
  }
  return out;
}

std::vector<std::pair<ParticleId, double>> cell_area_profile(const CellMap& cells) {
  const double total = static_cast<double>(cells.total_pixels());
  std::vector<std::pair<ParticleId, double>> out;
  out.reserve(cells.live_count());
  for (const auto& [id, c] : cells.cells()) {
    out.emplace_back(id, total > 0.0 ? static_cast<double>(c.pixels) / total : 0.0);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

PartitionRaster relabel(const PartitionRaster& raster, const CellMap& cells) {
  PartitionRaster out = raster;
  std::map<ParticleId, ParticleId> memo;
  for (ParticleId& l : out.labels) {
    auto [it, fresh] = memo.try_emplace(l, 0);
    if (fresh) it->second = cells.owner_of(l);
    l = it->second;
  }
  return out;
}

}  // namespace nncolor
