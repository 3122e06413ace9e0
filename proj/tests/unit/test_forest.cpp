#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "nncolor/forest.hpp"
#include "nncolor/stats.hpp"

using namespace nncolor;

namespace {

const Window kPlane = Window::unit_square(Topology::plane);
const Window kTorus = Window::unit_square();

// Earliest-born nearest among particles with smaller id (birth order), by exhaustive scan.
std::optional<ParticleId> brute_parent(const Forest& f, ParticleId id) {
  std::optional<ParticleId> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (ParticleId j = 0; j < id; ++j) {
    const double d2 = f.window.distance_squared(f.particles[id].z, f.particles[j].z);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

ParticleId walk_ancestor(const Forest& f, double t, ParticleId id) {
  ParticleId cur = id;
  for (;;) {
    const Particle& p = f.particles[cur];
    if (p.t <= t || !p.parent) return cur;
    cur = *p.parent;
  }
}

Forest chain_forest() {
  Forest f(kPlane);
  f.particles.push_back({0, 0.0, {0.1, 0.1}, std::nullopt});
  f.particles.push_back({1, 1.0, {0.2, 0.1}, 0});
  f.particles.push_back({2, 2.0, {0.3, 0.1}, 1});
  return f;
}

PartitionRaster raster_from(int n, auto label_of) {
  PartitionRaster r{kPlane, n, std::vector<ParticleId>(static_cast<std::size_t>(n) * n)};
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col) r.labels[static_cast<std::size_t>(row) * n + col] = label_of(col, row);
  return r;
}

}  // namespace

TEST_CASE("grow_elementary preconditions") {
  RngStream rng(40, 0);
  const std::vector<Seed> two = {{{0, 0}, 1}, {{1, 1}, 2}};
  const std::vector<Seed> one = {{{0, 0}, 1}};
  const std::vector<Seed> dup = {{{0.5, 0.5}, 1}, {{0.5, 0.5}, 2}};
  CHECK_THROWS_AS(grow_elementary(two, 1, kPlane, rng), std::domain_error);
  CHECK_THROWS_AS(grow_elementary(one, 10, kPlane, rng), std::domain_error);
  CHECK_THROWS_AS(grow_elementary(dup, 10, kPlane, rng), std::domain_error);
  CHECK_THROWS_AS(grow_elementary(two, 10, kTorus, rng), std::domain_error);
  CHECK(grow_elementary(two, 2, kPlane, rng).size() == 2);
}

TEST_CASE("elementary colouring follows the closest earlier point") {
  // The seeds alone decide the first arrival's colour.
  const Point2 s1{0, 0}, s2{1, 1};
  CHECK(distance({0.1, 0.2}, s1) < distance({0.1, 0.2}, s2));
  CHECK(distance({0.6, 0.6}, s2) < distance({0.6, 0.6}, s1));

  RngStream rng(41, 0);
  const std::vector<Seed> seeds = {{s1, 1}, {s2, 2}};
  int agree = 0, total = 0;
  for (int run = 0; run < 1000; ++run) {
    const Forest f = grow_elementary(seeds, 60, kPlane, rng);
    for (ParticleId id = 2; id < f.size(); ++id) {
      agree += f.particles[id].parent == brute_parent(f, id);
      ++total;
    }
    const auto first = f.particles[2];
    const std::uint32_t want = distance(first.z, s1) < distance(first.z, s2) ? 1u : 2u;
    REQUIRE(color_of(f, 2) == want);
  }
  CHECK(agree == total);
}

TEST_CASE("elementary colour fractions sum to one") {
  RngStream rng(42, 0);
  const std::vector<Seed> seeds = {{{0.2, 0.2}, 0}, {{0.8, 0.3}, 1}, {{0.5, 0.9}, 2}};
  const Forest f = grow_elementary(seeds, 500, kPlane, rng);
  std::vector<double> counts(3, 0.0);
  for (std::size_t n = 1; n <= f.size(); ++n) {
    counts[color_of(f, n - 1)] += 1.0;
    double sum = 0.0;
    for (double c : counts) sum += c / static_cast<double>(n);
    REQUIRE(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("grow_spacetime counts and parent rule") {
  RngStream rng(43, 0);
  CHECK_THROWS_AS(grow_spacetime(2.0, 1.0, kTorus, rng), std::domain_error);
  const double t1 = std::log(50.0), t2 = std::log(500.0);
  RunningStats roots, total, roots_only;
  for (int rep = 0; rep < 300; ++rep) {
    const Forest f = grow_spacetime(t1, t2, kTorus, rng);
    std::size_t r = 0;
    for (const auto& p : f.particles) {
      r += !p.parent;
      if (p.parent) REQUIRE(f.particles[*p.parent].t < p.t);
    }
    roots.add(static_cast<double>(r));
    total.add(static_cast<double>(f.size()));
    if (rep < 20) {
      for (ParticleId id = 0; id < f.size(); ++id) {
        if (f.particles[id].parent) REQUIRE(f.particles[id].parent == brute_parent(f, id));
      }
    }
    roots_only.add(static_cast<double>(grow_spacetime(t1, t1, kTorus, rng).size()));
  }
  CHECK(std::abs(roots.mean() - 50.0) < 4 * roots.std_error());
  CHECK(std::abs(total.mean() - 500.0) < 4 * total.std_error());
  CHECK(std::abs(roots_only.mean() - 50.0) < 4 * roots_only.std_error());
}

TEST_CASE("grow_spacetime warns on a degenerate root generation") {
  RngStream rng(44, 0);
  CHECK_FALSE(grow_spacetime(0.0, 1.0, kTorus, rng).warnings.empty());
  CHECK(grow_spacetime(std::log(50.0), std::log(60.0), kTorus, rng).warnings.empty());
}

TEST_CASE("parent distances scale like exp(-s/2)") {
  RngStream rng(45, 0);
  const double s1 = std::log(500.0), s2 = s1 + std::log(4.0), width = 0.1;
  std::vector<double> d1, d2;
  for (int rep = 0; rep < 40; ++rep) {
    const Forest f = grow_spacetime(std::log(50.0), s2 + width, kTorus, rng);
    for (const auto& p : f.particles) {
      if (!p.parent) continue;
      const double d = kTorus.distance(p.z, f.particles[*p.parent].z);
      if (p.t >= s1 && p.t < s1 + width) d1.push_back(d);
      if (p.t >= s2 && p.t < s2 + width) d2.push_back(d);
    }
  }
  CHECK(quantile(d2, 0.5) / quantile(d1, 0.5) == doctest::Approx(0.5).epsilon(0.08));
}

TEST_CASE("ancestor definition examples") {
  const Forest f = chain_forest();
  CHECK(ancestor(f, 1.5, 2) == 1);
  CHECK(ancestor(f, 2.0, 2) == 2);
  CHECK(ancestor(f, 5.0, 2) == 2);
  CHECK(ancestor(f, 0.5, 2) == 0);
  CHECK(ancestor(f, -3.0, 2) == 0);
  CHECK_THROWS_AS(ancestor(f, 1.0, 7), std::domain_error);
}

TEST_CASE("ancestor and descend agree with explicit walks") {
  RngStream rng(46, 0);
  const Forest f = grow_spacetime(std::log(30.0), std::log(10000.0), kTorus, rng);
  for (double t : {std::log(30.0), std::log(100.0), std::log(1000.0), 8.0}) {
    const auto anc = ancestors_at(f, t);
    for (ParticleId id = 0; id < f.size(); id += 7) {
      REQUIRE(ancestor(f, t, id) == walk_ancestor(f, t, id));
      REQUIRE(anc[id] == walk_ancestor(f, t, id));
    }
  }
  const double t1 = std::log(100.0), t2 = std::log(5000.0);
  std::set<ParticleId> seen;
  std::size_t born = 0;
  for (const auto& p : f.particles) born += p.t <= t2;
  for (const auto& p : f.particles) {
    if (p.t > t1) continue;
    const auto ds = descend(f, t1, t2, p.id);
    std::size_t brute = 0;
    for (const auto& q : f.particles) brute += q.t <= t2 && walk_ancestor(f, t1, q.id) == p.id;
    REQUIRE(ds.size() == brute);
    for (auto id : ds) REQUIRE(seen.insert(id).second);
    REQUIRE(descend(f, t1, t1, p.id) == std::vector<ParticleId>{p.id});
  }
  CHECK(seen.size() == born);
  const ParticleId late = f.size() - 1;
  CHECK_THROWS_AS(descend(f, t1, t2, late), std::domain_error);
}

TEST_CASE("empirical measure masses") {
  RngStream rng(47, 0);
  const double t1 = std::log(40.0), t2 = std::log(400.0);
  RunningStats per_area;
  for (int rep = 0; rep < 200; ++rep) {
    const Forest f = grow_spacetime(t1, t2, kTorus, rng);
    double sum = 0.0;
    std::size_t born = 0;
    for (const auto& p : f.particles) {
      born += p.t <= t2;
      if (p.t > t1) continue;
      const auto mu = empirical_measure(f, t1, t2, p.id);
      REQUIRE(mu.total_mass() ==
              doctest::Approx(std::exp(-t2) * static_cast<double>(descend(f, t1, t2, p.id).size())));
      sum += mu.total_mass();
    }
    REQUIRE(sum == doctest::Approx(std::exp(-t2) * static_cast<double>(born)));
    per_area.add(sum / kTorus.area());
  }
  CHECK(std::abs(per_area.mean() - 1.0) < 3 * per_area.std_error());
}

TEST_CASE("rasterize_voronoi: errors, single root, conservation") {
  RngStream rng(48, 0);
  Forest empty(kTorus);
  CHECK_THROWS_AS(rasterize_voronoi(empty, 0.0, 8), std::domain_error);
  Forest one(kTorus);
  one.particles.push_back({0, 0.0, {0.3, 0.3}, std::nullopt});
  CHECK_THROWS_AS(rasterize_voronoi(one, 0.0, 1), std::domain_error);
  const auto r1 = rasterize_voronoi(one, 0.0, 16);
  CHECK(label_pixel_counts(r1).size() == 1);

  const Forest f = grow_spacetime(std::log(50.0), std::log(2000.0), kTorus, rng);
  const auto r = rasterize_voronoi(f, std::log(50.0), 128);
  std::int64_t total = 0;
  for (const auto& [label, n] : label_pixel_counts(r)) {
    REQUIRE(f.particles[label].t <= std::log(50.0));
    total += n;
  }
  CHECK(total == 128 * 128);
}

TEST_CASE("two plane roots split along the perpendicular bisector") {
  RngStream rng(49, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Forest f(kPlane);
    const Point2 a{rng.uniform(), rng.uniform()}, b{rng.uniform(), rng.uniform()};
    f.particles.push_back({0, 0.0, a, std::nullopt});
    f.particles.push_back({1, 0.0, b, std::nullopt});
    const int n = 64;
    const auto r = rasterize_voronoi(f, 0.0, n);
    const Point2 m{(a.x + b.x) / 2, (a.y + b.y) / 2};
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < n; ++col) {
        const Point2 c = r.pixel_center(col, row);
        const double side = (c.x - m.x) * (b.x - a.x) + (c.y - m.y) * (b.y - a.y);
        if (std::abs(side) < 1e-12) continue;
        REQUIRE(r.at(col, row) == (side > 0 ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("boundary_length examples") {
  const int n = 32;
  CHECK(boundary_length(raster_from(n, [](int, int) { return ParticleId{5}; })) == 0.0);
  CHECK(boundary_length(raster_from(n, [&](int c, int) { return ParticleId(c < n / 2); })) ==
        doctest::Approx(1.0));
  CHECK(boundary_length(raster_from(n, [&](int c, int r) {
          return ParticleId((c < n / 2) + 2 * (r < n / 2));
        })) == doctest::Approx(2.0));
}

TEST_CASE("ancestor displacement") {
  RngStream rng(50, 0);
  const Forest f = grow_spacetime(std::log(100.0), std::log(2000.0), kTorus, rng);
  const double t = std::log(1500.0);
  for (double d : ancestor_displacement_samples(f, t, t)) REQUIRE(d == 0.0);
  CHECK_THROWS_AS(ancestor_displacement_samples(f, 1.0, 2.0), std::domain_error);
}

TEST_CASE("rescaled displacement law is invariant under a time shift") {
  RngStream rng(51, 0);
  const double lag = 2.0;
  std::vector<double> base, shifted;
  for (double delta : {0.0, 2.0}) {
    const double t0 = std::log(100.0) + delta;
    auto& out = delta == 0.0 ? base : shifted;
    for (int rep = 0; rep < 60; ++rep) {
      const Forest f = grow_spacetime(t0, t0 + lag, kTorus, rng);
      const auto d = ancestor_displacement_samples(f, t0 + lag, t0);
      // A few particles per forest keep the pooled sample close to independent.
      for (int k = 0; k < 15; ++k) out.push_back(std::exp(t0 / 2) * d[rng.below(d.size())]);
    }
  }
  CHECK(ks_two_sample(base, shifted).p_value > 0.001);
}
