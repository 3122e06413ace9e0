#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nncolor/geometry.hpp"
#include "nncolor/grid_index.hpp"
#include "nncolor/rng.hpp"
#include "nncolor/window.hpp"

namespace nncolor {

struct Particle {
  ParticleId id = 0;
  double t = 0.0;
  Point2 z;
  std::optional<ParticleId> parent;
};

/// Genealogical forest. Particles are stored by id, and ids follow birth order, so every
/// parent id is smaller than its child's id.
struct Forest {
  Window window;
  std::vector<Particle> particles;
  /// Colour of each root (elementary model); empty for the space-time model.
  std::map<ParticleId, std::uint32_t> root_colors;
  /// Non-fatal diagnostics collected while growing (e.g. a degenerate root generation).
  std::vector<std::string> warnings;

  explicit Forest(Window w) : window(w) {}

  std::size_t size() const { return particles.size(); }
  const Particle& at(ParticleId id) const;
};

struct Seed {
  Point2 z;
  std::uint32_t color = 0;
};

/// Elementary model: seeds get ids 0..k-1 and birth time 0; arrival j (j = k..n-1) is a
/// uniform point with birth time j - k + 1 parented to its nearest earlier particle.
/// Requires a plane window and at least two distinct seeds; throws std::domain_error
/// when n is smaller than the number of seeds.
Forest grow_elementary(std::span<const Seed> seeds, std::size_t n, const Window& w,
                       RngStream& rng);

/// Space-time model: roots are the particles of the space-time process born by t1 (with
/// their true birth times); arrivals on (t1, t2] attach to the nearest live particle.
Forest grow_spacetime(double t1, double t2, const Window& w, RngStream& rng);

/// Ancestor alive at time t: walks parent links until the first particle born at or before t.
/// Roots are returned when t precedes them.
ParticleId ancestor(const Forest& f, double t, ParticleId id);

/// Time-t ancestor of every particle, indexed by id (linear in the forest size).
std::vector<ParticleId> ancestors_at(const Forest& f, double t);

/// Ids born by t2 whose time-t1 ancestor is `root`. Throws std::domain_error if `root` was
/// born after t1 or t1 > t2.
std::vector<ParticleId> descend(const Forest& f, double t1, double t2, ParticleId root);

/// Colour inherited from the root of `id` (elementary model).
std::uint32_t color_of(const Forest& f, ParticleId id);

struct Atom {
  Point2 z;
  double weight = 0.0;
};

/// Weighted planar point list.
struct DiscreteMeasure {
  std::vector<Atom> atoms;
  double total_mass() const;
};

/// Weight e^{-t2} on the position of each descendant of `root`.
DiscreteMeasure empirical_measure(const Forest& f, double t1, double t2, ParticleId root);

/// Label grid over a window; labels are time-t1 ancestor ids. Row-major, row 0 at y_min.
struct PartitionRaster {
  Window window;
  int resolution = 0;
  std::vector<ParticleId> labels;

  ParticleId at(int col, int row) const {
    return labels[static_cast<std::size_t>(row) * resolution + col];
  }
  double pixel_width() const { return window.width() / resolution; }
  double pixel_height() const { return window.height() / resolution; }
  double pixel_area() const { return pixel_width() * pixel_height(); }
  Point2 pixel_center(int col, int row) const;
};

/// Labels each pixel centre with the time-t1 ancestor of its nearest particle.
/// Throws std::domain_error for resolution < 2 or an empty forest.
PartitionRaster rasterize_voronoi(const Forest& f, double t1, int resolution);

/// Pixel count per label.
std::map<ParticleId, std::int64_t> label_pixel_counts(const PartitionRaster& r);

/// Length of the label boundary: 4-neighbour pairs with different labels times the shared
/// pixel edge. Edges of the window are never counted.
double boundary_length(const PartitionRaster& r);

/// Distance from each particle born by t to its time-t0 ancestor (window metric).
/// Throws std::domain_error when t0 > t.
std::vector<double> ancestor_displacement_samples(const Forest& f, double t, double t0);

}  // namespace nncolor
