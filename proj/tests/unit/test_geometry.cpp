#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "nncolor/geometry.hpp"
#include "nncolor/rng.hpp"

using namespace nncolor;
using std::numbers::pi;

namespace {

// Union area of two discs from the closed-form lens intersection.
double two_disc_union_area(double r1, double r2, double d) {
  const double a1 = pi * r1 * r1, a2 = pi * r2 * r2;
  if (d >= r1 + r2) return a1 + a2;
  if (d <= std::abs(r1 - r2)) return std::max(a1, a2);
  const double lens =
      r1 * r1 * std::acos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1)) +
      r2 * r2 * std::acos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2)) -
      0.5 * std::sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2));
  return a1 + a2 - lens;
}

DiscUnion random_union(RngStream& rng, int n, double spread) {
  DiscUnion du;
  for (int i = 0; i < n; ++i) {
    du.add(Disc({rng.uniform(-spread, spread), rng.uniform(-spread, spread)},
                rng.uniform(0.05, 1.0)));
  }
  return du;
}

// Max pairwise distance between boundary samples; never exceeds the true diameter and
// falls short of it by at most max_r * (1 - cos(pi / per_disc)) at each end.
double brute_diameter(const DiscUnion& du, int per_disc, double& slack) {
  std::vector<Point2> pts;
  double max_r = 0.0;
  for (const Disc& d : du.discs()) {
    max_r = std::max(max_r, d.radius());
    for (int k = 0; k < per_disc; ++k) {
      const double a = 2 * pi * k / per_disc;
      pts.push_back({d.center().x + d.radius() * std::cos(a),
                     d.center().y + d.radius() * std::sin(a)});
    }
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, distance(pts[i], pts[j]));
  slack = 2.0 * max_r * (1.0 - std::cos(pi / per_disc)) + 1e-12;
  return best;
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(distance({1, 1}, {-2, 5}) == doctest::Approx(5.0));
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  RngStream rng(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const Point2 a{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point2 b{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point2 c{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    REQUIRE(distance(a, b) == distance(b, a));
    REQUIRE(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("disc validation") {
  CHECK_THROWS_AS(Disc({0, 0}, -1.0), std::domain_error);
  CHECK_THROWS_AS(Disc({NAN, 0}, 1.0), std::domain_error);
  CHECK_NOTHROW(Disc({0, 0}, 0.0));
  CHECK(Disc({0, 0}, 0.0).contains({0, 0}));
}

TEST_CASE("contains examples") {
  DiscUnion one({Disc({0, 0}, 1)});
  CHECK(contains(one, {0, 0}));
  CHECK(contains(one, {1, 0}));
  DiscUnion two({Disc({0, 0}, 1), Disc({3, 0}, 1)});
  CHECK_FALSE(contains(two, {1.5, 0}));
  CHECK(contains(two, {3.5, 0.2}));
  CHECK_FALSE(contains(DiscUnion{}, {0, 0}));
  CHECK(two.contains_prefix({0.5, 0}, 1));
  CHECK_FALSE(two.contains_prefix({3, 0}, 1));
}

TEST_CASE("du_diameter examples") {
  CHECK(du_diameter(DiscUnion({Disc({0, 0}, 1)})) == doctest::Approx(2.0));
  CHECK(du_diameter(DiscUnion({Disc({0, 0}, 1), Disc({3, 0}, 1)})) == doctest::Approx(5.0));
  CHECK(du_diameter(DiscUnion({Disc({0, 0}, 2), Disc({1, 0}, 1)})) == doctest::Approx(4.0));
  CHECK_THROWS_AS(du_diameter(DiscUnion{}), std::domain_error);
}

TEST_CASE("du_diameter matches boundary sampling") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscUnion du = random_union(rng, 3, 2.0);
    double slack = 0.0;
    const double brute = brute_diameter(du, 1500, slack);
    const double d = du_diameter(du);
    CHECK(brute <= d + 1e-12);
    CHECK(d <= brute + slack);
  }
}

TEST_CASE("exact area against closed forms") {
  CHECK(du_area_exact(DiscUnion({Disc({0, 0}, 1)})) == doctest::Approx(pi));
  CHECK(du_area_exact(DiscUnion({Disc({0, 0}, 1), Disc({5, 0}, 1)})) == doctest::Approx(2 * pi));
  CHECK(du_area_exact(DiscUnion({Disc({0, 0}, 1), Disc({0, 0}, 1)})) == doctest::Approx(pi));
  CHECK(du_area_exact(DiscUnion({Disc({0, 0}, 2), Disc({1, 0}, 1)})) == doctest::Approx(4 * pi));
  CHECK(du_area_exact(DiscUnion({Disc({0, 0}, 0)})) == 0.0);
  RngStream rng(12, 0);
  for (int i = 0; i < 500; ++i) {
    const double r1 = rng.uniform(0.1, 2), r2 = rng.uniform(0.1, 2), d = rng.uniform(0, 4);
    const double a = rng.uniform(0, 2 * pi);
    const Point2 c1{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Point2 c2{c1.x + d * std::cos(a), c1.y + d * std::sin(a)};
    const double got = du_area_exact(DiscUnion({Disc(c1, r1), Disc(c2, r2)}));
    REQUIRE(got == doctest::Approx(two_disc_union_area(r1, r2, d)).epsilon(1e-9));
  }
}

TEST_CASE("exact area agrees with Monte Carlo on random unions") {
  RngStream rng(13, 0);
  int within = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const DiscUnion du = random_union(rng, 10, 1.5);
    const auto mc = du_area_mc(du, 200000, rng);
    within += std::abs(mc.estimate - du_area_exact(du)) <= 4 * mc.std_error;
  }
  CHECK(within >= trials - 1);
}

TEST_CASE("du_area_mc analytic cases") {
  RngStream rng(14, 0);
  const auto one = du_area_mc(DiscUnion({Disc({0, 0}, 1)}), 1000000, rng);
  CHECK(std::abs(one.estimate - pi) < 3 * one.std_error);
  const auto two = du_area_mc(DiscUnion({Disc({0, 0}, 1), Disc({4, 0}, 1)}), 1000000, rng);
  CHECK(std::abs(two.estimate - 2 * pi) < 3 * two.std_error);
  const auto dup = du_area_mc(DiscUnion({Disc({0, 0}, 1), Disc({0, 0}, 1)}), 1000000, rng);
  CHECK(std::abs(dup.estimate - pi) < 3 * dup.std_error);
  CHECK_THROWS_AS(du_area_mc(DiscUnion{}, 10, rng), std::domain_error);
  CHECK_THROWS_AS(du_area_mc(DiscUnion({Disc({0, 0}, 1)}), 0, rng), std::domain_error);
}

TEST_CASE("disc_increment_mc estimates the added area") {
  RngStream rng(15, 0);
  const DiscUnion base({Disc({0, 0}, 1)});
  const Disc added({1, 0}, 1);
  DiscUnion both = base;
  both.add(added);
  const double truth = du_area_exact(both) - du_area_exact(base);
  const auto inc = disc_increment_mc(base, added, 400000, rng);
  CHECK(std::abs(inc.estimate - truth) < 4 * inc.std_error);
}

TEST_CASE("increment standard error stays positive when no sample hits the base") {
  RngStream rng(17, 0);
  // The base covers a fraction 1e-6 of the added disc: almost surely no hits in 4000 samples.
  const DiscUnion base({Disc({0, 0}, 0.01)});
  const Disc added({0, 0}, 10.0);
  const auto inc = disc_increment_mc(base, added, 4000, rng);
  CHECK(inc.estimate == doctest::Approx(added.area()));
  CHECK(inc.std_error > 0.0);
  const double truth = added.area() - base.discs()[0].area();
  CHECK(std::abs(inc.estimate - truth) < 3 * inc.std_error);
}

TEST_CASE("isodiametric examples and fuzz") {
  CHECK(isodiametric_holds(DiscUnion({Disc({0, 0}, 1.3)}), pi * 1.3 * 1.3));
  CHECK(isodiametric_holds(DiscUnion({Disc({0, 0}, 1), Disc({4, 0}, 1)}), 2 * pi));
  CHECK_FALSE(isodiametric_holds(DiscUnion({Disc({0, 0}, 1)}), pi + 1e-6));
  RngStream rng(16, 0);
  for (int i = 0; i < 300; ++i) {
    const DiscUnion du = random_union(rng, 10, 2.0);
    const auto mc = du_area_mc(du, 20000, rng);
    REQUIRE(isodiametric_holds(du, mc.estimate, mc.std_error));
    REQUIRE(isodiametric_holds(du, du_area_exact(du)));
  }
}

TEST_CASE("lc1_bound examples") {
  const double r = 0.7;
  CHECK(lc1_bound(0.0, 0.0, pi * r * r) == doctest::Approx(2 * r));
  CHECK(lc1_bound(2.0, pi, pi) == doctest::Approx(2.0));
  CHECK_THROWS_AS(lc1_bound(1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lc1_bound(-1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("lc1_bound dominates the diameter when the new disc is centred in C") {
  RngStream rng(17, 0);
  for (int i = 0; i < 2000; ++i) {
    DiscUnion C = random_union(rng, 1 + static_cast<int>(rng.below(6)), 1.5);
    // Centre D at a uniformly chosen point of C by rejection.
    const BoundingBox b = C.bounds();
    Point2 c;
    do {
      c = {rng.uniform(b.x_min, b.x_max), rng.uniform(b.y_min, b.y_max)};
    } while (!C.contains(c));
    DiscUnion CD = C;
    CD.add(Disc(c, rng.uniform(0.0, 3.0)));
    const double bound = lc1_bound(du_diameter(C), du_area_exact(C), du_area_exact(CD));
    REQUIRE(bound >= du_diameter(CD) - 1e-9);
  }
}
