#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nncolor/geometry.hpp"
#include "nncolor/window.hpp"

namespace nncolor {

using ParticleId = std::uint64_t;

struct Neighbor {
  ParticleId id;
  double distance;
};

/// Exact dynamic nearest-neighbour index over a uniform grid of cells.
///
/// Cell side tracks 1/sqrt(live intensity); the grid is rebuilt whenever the live count
/// drifts by a factor of 4 from the count it was sized for. Queries expand square rings of
/// cells until no unvisited cell can hold a closer point, so results match brute force
/// exactly (ties go to the smallest id). Torus windows use the wrap-around metric.
class GridIndex {
 public:
  explicit GridIndex(Window window, std::size_t expected_count = 0);

  /// Throws std::domain_error when `id` is already live or `p` lies outside a plane window.
  void insert(ParticleId id, Point2 p);
  /// Throws std::domain_error when `id` is not live.
  void remove(ParticleId id);

  std::optional<Neighbor> nearest(Point2 q) const;

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  bool contains(ParticleId id) const { return positions_.contains(id); }
  Point2 position(ParticleId id) const;
  /// Live ids in ascending order.
  std::vector<ParticleId> ids() const;

  const Window& window() const { return window_; }
  double cell_width() const { return cell_w_; }
  double cell_height() const { return cell_h_; }

 private:
  struct Entry {
    ParticleId id;
    Point2 p;
  };

  void rebuild(std::size_t sized_for);
  std::size_t cell_of(Point2 p) const;
  int column_of(double x) const;
  int row_of(double y) const;
  void scan_cell(int cx, int cy, Point2 q, double& best_d2, ParticleId& best_id,
                 bool& found) const;

  Window window_;
  int nx_ = 1;
  int ny_ = 1;
  double cell_w_ = 1.0;
  double cell_h_ = 1.0;
  std::size_t sized_for_ = 0;
  std::vector<std::vector<Entry>> cells_;
  std::unordered_map<ParticleId, Point2> positions_;
};

struct InsertOp {
  ParticleId id;
  Point2 p;
};
struct RemoveOp {
  ParticleId id;
};
using IndexMutation = std::variant<InsertOp, RemoveOp>;

void mutate(GridIndex& index, const IndexMutation& op);

}  // namespace nncolor
