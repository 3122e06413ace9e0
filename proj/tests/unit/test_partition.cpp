#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "nncolor/partition.hpp"
#include "nncolor/stats.hpp"

using namespace nncolor;

namespace {

const Window kTorus = Window::unit_square();

struct Setup {
  Forest forest;
  PartitionRaster raster;
  CellMap cells;
};

Setup make_setup(double t1, int res, RngStream& rng) {
  Forest f = grow_spacetime(t1, t1 + 1.5, kTorus, rng);
  PartitionRaster r = rasterize_voronoi(f, t1, res);
  CellMap c = init_cells(f, t1, r);
  return {std::move(f), std::move(r), std::move(c)};
}

}  // namespace

TEST_CASE("init_cells: single root owns the window") {
  Forest f(kTorus);
  f.particles.push_back({0, 0.0, {0.4, 0.6}, std::nullopt});
  f.particles.push_back({1, 1.0, {0.1, 0.1}, 0});
  const auto r = rasterize_voronoi(f, 0.0, 32);
  const CellMap c = init_cells(f, 0.0, r);
  CHECK(c.live_count() == 1);
  CHECK(c.area(0) == doctest::Approx(kTorus.area()));
  CHECK(cell_area_profile(c) == std::vector<std::pair<ParticleId, double>>{{0, 1.0}});
  // Labelling by the time-1 ancestors puts particle 1 on the raster, which is not a root at 0.
  const auto later = rasterize_voronoi(f, 1.0, 32);
  CHECK_THROWS_AS(init_cells(f, 0.0, later), std::domain_error);
}

TEST_CASE("init_cells matches the label table and conserves pixels") {
  RngStream rng(100, 0);
  const Setup s = make_setup(std::log(200.0), 128, rng);
  const auto counts = label_pixel_counts(s.raster);
  CHECK(s.cells.total_pixels() == 128 * 128);
  for (const auto& [id, cell] : s.cells.cells()) {
    const auto it = counts.find(id);
    CHECK(cell.pixels == (it == counts.end() ? 0 : it->second));
  }
  double sum = 0.0;
  for (const auto& [id, frac] : cell_area_profile(s.cells)) sum += frac;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("merge_step examples and errors") {
  CellMap c(Window(-1, 4, -1, 1, Topology::plane), 1.0);
  c.add(0, {0, 0}, 5);
  c.add(1, {1, 0}, 7);
  c.add(2, {3, 0}, 11);
  const auto e = merge_step(c, 1, 0.5);
  CHECK(e.absorber == 0);
  CHECK(e.deleted == 1);
  CHECK(e.area == 7.0);
  CHECK(c.cell(0).pixels == 12);
  CHECK(c.total_pixels() == 23);
  CHECK(c.owner_of(1) == 0);
  CHECK_THROWS_AS(merge_step(c, 1), std::domain_error);
  merge_step(c, 0);
  CHECK(c.owner_of(1) == 2);
  CHECK_THROWS_AS(merge_step(c, 2), std::domain_error);
}

TEST_CASE("absorber is the brute-force nearest survivor") {
  RngStream rng(101, 0);
  int agree = 0, total = 0;
  while (total < 10000) {
    CellMap c(kTorus, 1.0);
    std::map<ParticleId, Point2> live;
    for (ParticleId id = 0; id < 200; ++id) {
      const Point2 p{rng.uniform(), rng.uniform()};
      c.add(id, p, 1);
      live[id] = p;
    }
    while (live.size() > 1 && total < 10000) {
      auto it = live.begin();
      std::advance(it, static_cast<long>(rng.below(live.size())));
      const Point2 z = it->second;
      const ParticleId gone = it->first;
      live.erase(it);
      ParticleId want = 0;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [id, p] : live) {
        const double d2 = kTorus.distance_squared(z, p);
        if (d2 < best) best = d2, want = id;
      }
      agree += merge_step(c, gone).absorber == want;
      ++total;
    }
  }
  CHECK(agree == total);
}

TEST_CASE("reverse_run: two particles end with one owning everything") {
  CellMap c(kTorus, 0.25);
  c.add(0, {0.25, 0.5}, 2);
  c.add(1, {0.75, 0.5}, 2);
  RngStream rng(102, 0);
  const auto out = reverse_run(c, 10.0, -100.0, rng);
  REQUIRE(out.events.size() == 1);
  CHECK(out.cells.live_count() == 1);
  CHECK(out.cells.cells().begin()->second.pixels == 4);
  CHECK(out.events[0].area == doctest::Approx(0.5));
}

TEST_CASE("reverse_run errors") {
  RngStream rng(103, 0);
  CHECK_THROWS_AS(reverse_run(CellMap(kTorus, 1.0), 1.0, 0.0, rng), std::domain_error);
  CellMap c(kTorus, 1.0);
  c.add(0, {0.5, 0.5}, 1);
  CHECK_THROWS_AS(reverse_run(c, 1.0, 1.0, rng), std::domain_error);
}

TEST_CASE("reverse_run: conservation, ordering, thinning law") {
  RngStream rng(104, 0);
  const double t1 = std::log(100.0);
  const Setup s = make_setup(t1, 64, rng);
  const std::int64_t n = static_cast<std::int64_t>(s.cells.live_count());
  const double p = std::exp(-1.0);
  std::vector<std::int64_t> survivors;
  for (int rep = 0; rep < 500; ++rep) {
    const auto out = reverse_run(s.cells, t1, t1 - 1.0, rng);
    CellMap replay = s.cells;
    double prev_time = t1;
    for (const auto& e : out.events) {
      REQUIRE(e.time <= prev_time);
      REQUIRE(e.time > t1 - 1.0);
      prev_time = e.time;
      const std::size_t before = replay.live_count();
      const auto again = merge_step(replay, e.deleted, e.time);
      REQUIRE(again.absorber == e.absorber);
      REQUIRE(replay.live_count() == before - 1);
      REQUIRE(replay.total_pixels() == 64 * 64);
    }
    REQUIRE(out.cells.total_pixels() == 64 * 64);
    survivors.push_back(static_cast<std::int64_t>(out.cells.live_count()));
  }
  CHECK(binomial_gof(survivors, n, p) > 0.001);
}

TEST_CASE("relabel reproduces the merged cell areas") {
  RngStream rng(105, 0);
  const double t1 = std::log(150.0);
  const Setup s = make_setup(t1, 96, rng);
  const auto out = reverse_run(s.cells, t1, t1 - 1.2, rng);
  const auto merged = relabel(s.raster, out.cells);
  const auto counts = label_pixel_counts(merged);
  for (const auto& [label, n] : counts) {
    REQUIRE(out.cells.is_live(label));
    CHECK(out.cells.cell(label).pixels == n);
  }
  const auto profile = cell_area_profile(out.cells);
  for (std::size_t i = 1; i < profile.size(); ++i) REQUIRE(profile[i].second <= profile[i - 1].second);
}
