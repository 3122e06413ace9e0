#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <numbers>
#include <vector>

#include "nncolor/shot_noise.hpp"

using namespace nncolor;

TEST_CASE("shot noise rejects a nonpositive horizon") {
  RngStream rng(80, 0);
  CHECK_THROWS_AS(shot_noise_run(ShotNoiseKind::V, 0.0, rng), std::domain_error);
}

TEST_CASE("long-run means of V and W") {
  RngStream rng(81, 0);
  const auto v = shot_noise_run(ShotNoiseKind::V, 1e4, rng);
  const auto w = shot_noise_run(ShotNoiseKind::W, 1e4, rng);
  CHECK(v.time_average == doctest::Approx(1.0).epsilon(0.05));
  CHECK(w.time_average == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(0.05));
  CHECK(v.jumps == doctest::Approx(1e4).epsilon(0.05));
}

TEST_CASE("V has the Exp(1) stationary law") {
  // Rate-1 Exp(1) jumps with unit decay give a Gamma(1, 1) stationary law.
  RngStream rng(82, 0);
  const std::vector<double> levels = {0.5, 1.0, 2.0};
  const auto v = shot_noise_run(ShotNoiseKind::V, 2e4, rng, levels);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    CHECK(v.occupation[k] == doctest::Approx(std::exp(-levels[k])).epsilon(0.06));
  }
}

TEST_CASE("occupation decreases in the level and is rare above 8") {
  RngStream rng(83, 0);
  const std::vector<double> levels = {0.0, 1.0, 2.0, 4.0, 8.0};
  int ok = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    const auto w = shot_noise_run(ShotNoiseKind::W, 1e3, rng, levels);
    for (std::size_t k = 1; k < levels.size(); ++k) {
      REQUIRE(w.occupation[k] <= w.occupation[k - 1]);
    }
    REQUIRE(w.occupation[0] <= 1.0);
    ok += w.occupation.back() < 1.0 / 6.0;
  }
  CHECK(ok >= 990);
}

TEST_CASE("grid values follow the path between jumps") {
  RngStream rng(84, 0);
  const auto v = shot_noise_run(ShotNoiseKind::V, 50.0, rng, {}, 500);
  REQUIRE(v.grid_values.size() == 500);
  CHECK(v.grid_times.front() == 0.0);
  CHECK(v.grid_values.front() == 0.0);
  for (double x : v.grid_values) REQUIRE(x >= 0.0);
}
