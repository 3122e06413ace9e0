#include "nncolor/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nncolor/sampling.hpp"

namespace nncolor {

const Particle& Forest::at(ParticleId id) const {
  if (id >= particles.size()) throw std::domain_error("Forest: unknown particle id");
  return particles[id];
}

Forest grow_elementary(std::span<const Seed> seeds, std::size_t n, const Window& w,
                       RngStream& rng) {
  if (w.is_torus()) throw std::domain_error("grow_elementary: requires a plane window");
  if (seeds.size() < 2) throw std::domain_error("grow_elementary: need at least two seeds");
  if (n < seeds.size()) throw std::domain_error("grow_elementary: n smaller than seed count");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!w.contains(seeds[i].z)) throw std::domain_error("grow_elementary: seed outside window");
    for (std::size_t j = 0; j < i; ++j) {
      if (seeds[i].z == seeds[j].z) throw std::domain_error("grow_elementary: duplicate seeds");
    }
  }

  Forest f(w);
  f.particles.reserve(n);
  GridIndex index(w, n);
  for (const Seed& s : seeds) {
    const ParticleId id = f.particles.size();
    f.particles.push_back({id, 0.0, s.z, std::nullopt});
    f.root_colors.emplace(id, s.color);
    index.insert(id, s.z);
  }
  for (std::size_t j = seeds.size(); j < n; ++j) {
    const ParticleId id = j;
    const Point2 z{rng.uniform(w.x_min(), w.x_max()), rng.uniform(w.y_min(), w.y_max())};
    const auto nn = index.nearest(z);
    f.particles.push_back({id, static_cast<double>(j - seeds.size() + 1), z, nn->id});
    index.insert(id, z);
  }
  return f;
}

Forest grow_spacetime(double t1, double t2, const Window& w, RngStream& rng) {
  if (!(t1 <= t2)) throw std::domain_error("grow_spacetime: requires t1 <= t2");
  Forest f(w);
  const double expected_roots = std::exp(t1) * w.area();
  if (expected_roots < 2.0) {
    f.warnings.push_back("expected root count " + std::to_string(expected_roots) +
                         " < 2: degenerate colouring");
  }
  const auto roots = sample_spacetime_ppp(-std::numeric_limits<double>::infinity(), t1, w, rng);
  std::vector<SpaceTimePoint> arrivals;
  if (t2 > t1) arrivals = sample_spacetime_ppp(t1, t2, w, rng);

  f.particles.reserve(roots.size() + arrivals.size());
  GridIndex index(w, roots.size() + arrivals.size());
  for (const auto& r : roots) {
    const ParticleId id = f.particles.size();
    f.particles.push_back({id, r.t, r.z, std::nullopt});
    index.insert(id, r.z);
  }
  for (const auto& a : arrivals) {
    const ParticleId id = f.particles.size();
    std::optional<ParticleId> parent;
    if (const auto nn = index.nearest(a.z)) parent = nn->id;
    f.particles.push_back({id, a.t, a.z, parent});
    index.insert(id, a.z);
  }
  return f;
}

ParticleId ancestor(const Forest& f, double t, ParticleId id) {
  const Particle* p = &f.at(id);
  while (p->t > t && p->parent) p = &f.particles[*p->parent];
  return p->id;
}

std::vector<ParticleId> ancestors_at(const Forest& f, double t) {
  std::vector<ParticleId> out(f.size());
  for (const Particle& p : f.particles) {
    out[p.id] = (p.t <= t || !p.parent) ? p.id : out[*p.parent];
  }
  return out;
}

std::vector<ParticleId> descend(const Forest& f, double t1, double t2, ParticleId root) {
  if (t1 > t2) throw std::domain_error("descend: requires t1 <= t2");
  if (f.at(root).t > t1) throw std::domain_error("descend: root born after t1");
  const auto anc = ancestors_at(f, t1);
  std::vector<ParticleId> out;
  for (const Particle& p : f.particles) {
    if (p.t <= t2 && anc[p.id] == root) out.push_back(p.id);
  }
  return out;
}

std::uint32_t color_of(const Forest& f, ParticleId id) {
  const Particle* p = &f.at(id);
  while (p->parent) p = &f.particles[*p->parent];
  const auto it = f.root_colors.find(p->id);
  return it == f.root_colors.end() ? static_cast<std::uint32_t>(p->id) : it->second;
}

double DiscreteMeasure::total_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms) m += a.weight;
  return m;
}

DiscreteMeasure empirical_measure(const Forest& f, double t1, double t2, ParticleId root) {
  const double w = std::exp(-t2);
  DiscreteMeasure mu;
  for (ParticleId id : descend(f, t1, t2, root)) mu.atoms.push_back({f.particles[id].z, w});
  return mu;
}

Point2 PartitionRaster::pixel_center(int col, int row) const {
  return {window.x_min() + (col + 0.5) * pixel_width(),
          window.y_min() + (row + 0.5) * pixel_height()};
}

PartitionRaster rasterize_voronoi(const Forest& f, double t1, int resolution) {
  if (resolution < 2) throw std::domain_error("rasterize_voronoi: resolution must be >= 2");
  if (f.particles.empty()) throw std::domain_error("rasterize_voronoi: empty forest");
  GridIndex index(f.window, f.size());
  for (const Particle& p : f.particles) index.insert(p.id, p.z);
  const auto anc = ancestors_at(f, t1);

  PartitionRaster r{f.window, resolution, {}};
  r.labels.resize(static_cast<std::size_t>(resolution) * resolution);
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      const auto nn = index.nearest(r.pixel_center(col, row));
      r.labels[static_cast<std::size_t>(row) * resolution + col] = anc[nn->id];
    }
  }
  return r;
}

std::map<ParticleId, std::int64_t> label_pixel_counts(const PartitionRaster& r) {
  std::map<ParticleId, std::int64_t> counts;
  for (ParticleId l : r.labels) ++counts[l];
  return counts;
}

double boundary_length(const PartitionRaster& r) {
  std::int64_t vertical_edges = 0;    // between horizontal neighbours
  std::int64_t horizontal_edges = 0;  // between vertical neighbours
  for (int row = 0; row < r.resolution; ++row) {
    for (int col = 0; col < r.resolution; ++col) {
      const ParticleId here = r.at(col, row);
      if (col + 1 < r.resolution && r.at(col + 1, row) != here) ++vertical_edges;
      if (row + 1 < r.resolution && r.at(col, row + 1) != here) ++horizontal_edges;
    }
  }
  return static_cast<double>(vertical_edges) * r.pixel_height() +
         static_cast<double>(horizontal_edges) * r.pixel_width();
}

std::vector<double> ancestor_displacement_samples(const Forest& f, double t, double t0) {
  if (t0 > t) throw std::domain_error("ancestor_displacement_samples: requires t0 <= t");
  const auto anc = ancestors_at(f, t0);
  std::vector<double> out;
  for (const Particle& p : f.particles) {
    if (p.t > t) continue;
    out.push_back(f.window.distance(p.z, f.particles[anc[p.id]].z));
  }
  return out;
}

}  // namespace nncolor
