#include "nncolor/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nncolor {

namespace {

constexpr int kMaxCellsPerSide = 2048;

}  // namespace

GridIndex::GridIndex(Window window, std::size_t expected_count) : window_(window) {
  rebuild(expected_count);
}

void GridIndex::rebuild(std::size_t sized_for) {
  sized_for_ = std::max<std::size_t>(sized_for, 1);
  const double intensity = static_cast<double>(sized_for_) / window_.area();
  const double cell = 1.0 / std::sqrt(intensity);
  nx_ = std::clamp(static_cast<int>(window_.width() / cell), 1, kMaxCellsPerSide);
  ny_ = std::clamp(static_cast<int>(window_.height() / cell), 1, kMaxCellsPerSide);
  cell_w_ = window_.width() / nx_;
  cell_h_ = window_.height() / ny_;
  cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (const auto& [id, p] : positions_) cells_[cell_of(p)].push_back({id, p});
}

int GridIndex::column_of(double x) const {
  const int c = static_cast<int>(std::floor((x - window_.x_min()) / cell_w_));
  return std::clamp(c, 0, nx_ - 1);
}

int GridIndex::row_of(double y) const {
  const int r = static_cast<int>(std::floor((y - window_.y_min()) / cell_h_));
  return std::clamp(r, 0, ny_ - 1);
}

std::size_t GridIndex::cell_of(Point2 p) const {
  return static_cast<std::size_t>(row_of(p.y)) * nx_ + column_of(p.x);
}

void GridIndex::insert(ParticleId id, Point2 p) {
  if (!is_finite(p)) throw std::domain_error("GridIndex::insert: non-finite point");
  if (positions_.contains(id)) throw std::domain_error("GridIndex::insert: duplicate id");
  if (window_.is_torus()) {
    p = window_.wrap(p);
  } else if (!window_.contains(p)) {
    throw std::domain_error("GridIndex::insert: point outside plane window");
  }
  positions_.emplace(id, p);
  if (positions_.size() > 4 * sized_for_) {
    rebuild(positions_.size());
  } else {
    cells_[cell_of(p)].push_back({id, p});
  }
}

void GridIndex::remove(ParticleId id) {
  const auto it = positions_.find(id);
  if (it == positions_.end()) throw std::domain_error("GridIndex::remove: id not live");
  auto& cell = cells_[cell_of(it->second)];
  const auto pos = std::find_if(cell.begin(), cell.end(), [id](const Entry& e) { return e.id == id; });
  *pos = cell.back();
  cell.pop_back();
  positions_.erase(it);
  if (sized_for_ > 4 && positions_.size() * 4 < sized_for_) rebuild(positions_.size());
}

Point2 GridIndex::position(ParticleId id) const {
  const auto it = positions_.find(id);
  if (it == positions_.end()) throw std::domain_error("GridIndex::position: id not live");
  return it->second;
}

std::vector<ParticleId> GridIndex::ids() const {
  std::vector<ParticleId> out;
  out.reserve(positions_.size());
  for (const auto& kv : positions_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

void GridIndex::scan_cell(int cx, int cy, Point2 q, double& best_d2, ParticleId& best_id,
                          bool& found) const {
  for (const Entry& e : cells_[static_cast<std::size_t>(cy) * nx_ + cx]) {
    const double d2 = window_.distance_squared(q, e.p);
    if (!found || d2 < best_d2 || (d2 == best_d2 && e.id < best_id)) {
      best_d2 = d2;
      best_id = e.id;
      found = true;
    }
  }
}

std::optional<Neighbor> GridIndex::nearest(Point2 q) const {
  if (positions_.empty()) return std::nullopt;
  const bool torus = window_.is_torus();
  if (torus) q = window_.wrap(q);
  const int qx = column_of(q.x);
  const int qy = row_of(q.y);
  const double step = std::min(cell_w_, cell_h_);
  const int max_ring = std::max(nx_, ny_);

  double best_d2 = std::numeric_limits<double>::infinity();
  ParticleId best_id = 0;
  bool found = false;

  for (int k = 0; k <= max_ring; ++k) {
    if (torus && 2 * k + 1 > std::min(nx_, ny_)) {
      // Rings would start overlapping themselves; finish with a full scan.
      for (int cy = 0; cy < ny_; ++cy)
        for (int cx = 0; cx < nx_; ++cx) scan_cell(cx, cy, q, best_d2, best_id, found);
      break;
    }
    for (int dy = -k; dy <= k; ++dy) {
      const bool edge_row = (dy == -k || dy == k);
      for (int dx = -k; dx <= k; dx += edge_row ? 1 : 2 * k) {
        int cx = qx + dx;
        int cy = qy + dy;
        if (torus) {
          cx = (cx % nx_ + nx_) % nx_;
          cy = (cy % ny_ + ny_) % ny_;
        } else if (cx < 0 || cx >= nx_ || cy < 0 || cy >= ny_) {
          if (k == 0) break;
          continue;
        }
        scan_cell(cx, cy, q, best_d2, best_id, found);
        if (k == 0) break;
      }
    }
    // Every unvisited cell is at least k full cells away from q.
    if (found) {
      const double bound = k * step;
      if (best_d2 < bound * bound) break;
    }
  }
  return Neighbor{best_id, std::sqrt(best_d2)};
}

void mutate(GridIndex& index, const IndexMutation& op) {
  std::visit(
      [&index](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, InsertOp>) {
          index.insert(m.id, m.p);
        } else {
          index.remove(m.id);
        }
      },
      op);
}

}  // namespace nncolor
