#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>
#include <vector>

#include "nncolor/rng.hpp"
#include "nncolor/stats.hpp"

using namespace nncolor;

TEST_CASE("running stats merge equals pooled accumulation") {
  RunningStats a, b, all;
  for (int i = 0; i < 100; ++i) {
    const double x = i * 0.37 - 3;
    (i % 3 ? a : b).add(x);
    all.add(x);
  }
  a.merge(b);
  CHECK(a.count() == all.count());
  CHECK(a.mean() == doctest::Approx(all.mean()));
  CHECK(a.variance() == doctest::Approx(all.variance()));
  const std::vector<double> xs = {1, 2, 3, 4};
  CHECK(summarize(xs).mean() == 2.5);
  CHECK(summarize(xs).variance() == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("pearson correlation") {
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {2, 4, 6, 8, 10}, c = {5, 4, 3, 2, 1};
  CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
  CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_correlation(a, std::vector<double>{1, 2}), std::domain_error);
}

TEST_CASE("Kolmogorov distribution reference points") {
  CHECK(kolmogorov_sf(0.0) == 1.0);
  CHECK(kolmogorov_sf(1.3581) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_sf(1.6276) == doctest::Approx(0.01).epsilon(0.01));
  CHECK(kolmogorov_sf(0.8276) == doctest::Approx(0.5).epsilon(0.01));
  // Both series agree where they switch over.
  CHECK(kolmogorov_sf(0.999999) == doctest::Approx(kolmogorov_sf(1.0)).epsilon(1e-5));
}

TEST_CASE("KS tests: calibration and power") {
  RngStream rng(110, 0);
  int rejections = 0;
  const int meta = 400;
  for (int m = 0; m < meta; ++m) {
    std::vector<double> xs(300);
    for (double& x : xs) x = rng.uniform();
    rejections += ks_one_sample(xs, [](double x) { return x; }).p_value < 0.05;
  }
  CHECK(std::abs(rejections / double(meta) - 0.05) < 4 * std::sqrt(0.05 * 0.95 / meta));

  std::vector<double> u(2000), v(2000), w(2000);
  for (double& x : u) x = rng.uniform();
  for (double& x : v) x = rng.uniform();
  for (double& x : w) x = rng.uniform() * 1.2;
  CHECK(ks_two_sample(u, v).p_value > 0.001);
  CHECK(ks_two_sample(u, w).p_value < 1e-6);
  CHECK(ks_one_sample(w, [](double x) { return std::min(x, 1.0); }).p_value < 1e-6);
  CHECK_THROWS_AS(ks_one_sample(std::vector<double>{}, [](double x) { return x; }), std::domain_error);
  CHECK_THROWS_AS(ks_two_sample(u, std::vector<double>{}), std::domain_error);
}

TEST_CASE("chi-square survival reference values") {
  CHECK(chi_square_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(chi_square_sf(18.307038, 10) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(chi_square_sf(0.0, 3) == 1.0);
}

TEST_CASE("poisson GOF: calibrated on Poisson data, rejects constants") {
  RngStream rng(111, 0);
  std::vector<double> ps;
  for (int meta = 0; meta < 100; ++meta) {
    std::vector<std::int64_t> counts(10000);
    for (auto& c : counts) c = static_cast<std::int64_t>(rng.poisson(100.0));
    ps.push_back(poisson_gof(counts, 100.0));
  }
  CHECK(ps.front() > 0.001);
  CHECK(ks_one_sample(ps, [](double p) { return p; }).p_value > 0.001);
  const std::vector<std::int64_t> constant(10000, 100);
  CHECK(poisson_gof(constant, 100.0) < 1e-6);
  CHECK_THROWS_AS(poisson_gof(std::vector<std::int64_t>{}, 100.0), std::domain_error);
  CHECK_THROWS_AS(poisson_gof(std::vector<std::int64_t>(10, 3), 3.0), std::domain_error);
  // Expected counts this small leave a single pooled bin.
  CHECK_THROWS_AS(poisson_gof(std::vector<std::int64_t>(20, 0), 0.01), std::domain_error);
}

TEST_CASE("binomial GOF") {
  RngStream rng(112, 0);
  std::binomial_distribution<std::int64_t> bin(400, 0.25);
  std::vector<std::int64_t> counts(2000);
  for (auto& c : counts) c = bin(rng);
  CHECK(binomial_gof(counts, 400, 0.25) > 0.001);
  CHECK(binomial_gof(counts, 400, 0.3) < 1e-6);
  CHECK_THROWS_AS(binomial_gof(counts, 0, 0.5), std::domain_error);
}

TEST_CASE("quantile interpolates order statistics") {
  CHECK(quantile({3, 1, 2}, 0.5) == 2.0);
  CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile({1, 2, 3, 4}, 0.0) == 1.0);
  CHECK(quantile({1, 2, 3, 4}, 1.0) == 4.0);
  CHECK_THROWS_AS(quantile({}, 0.5), std::domain_error);
}
