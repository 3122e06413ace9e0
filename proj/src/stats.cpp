#include "nncolor/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nncolor {

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningStats::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStats::std_error() const {
  return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

RunningStats summarize(std::span<const double> xs) {
  RunningStats s;
  for (double x : xs) s.add(x);
  return s;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::domain_error("pearson_correlation: need two equal-length samples");
  }
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  double cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) cov += (a[i] - sa.mean()) * (b[i] - sb.mean());
  cov /= static_cast<double>(a.size() - 1);
  return cov / std::sqrt(sa.variance() * sb.variance());
}

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.0) {
    // P(K <= x) = sqrt(2 pi) / x * sum exp(-(2k-1)^2 pi^2 / (8 x^2)).
    double cdf = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double m = 2.0 * k - 1.0;
      cdf += std::exp(-m * m * std::numbers::pi * std::numbers::pi / (8.0 * x * x));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * cdf, 0.0, 1.0);
  }
  double sf = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sf += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(sf, 0.0, 1.0);
}

double ks_p_value(double statistic, double n_effective) {
  const double sn = std::sqrt(n_effective);
  return kolmogorov_sf((sn + 0.12 + 0.11 / sn) * statistic);
}

KSResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("ks_one_sample: empty sample");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return {d, ks_p_value(d, n)};
}

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  std::vector<double> xa(a.begin(), a.end());
  std::vector<double> xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb))};
}

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

GofResult discrete_gof(std::span<const std::int64_t> counts,
                       const std::function<double(std::int64_t)>& pmf, std::int64_t support_max) {
  if (counts.size() < 20) throw std::domain_error("discrete_gof: need at least 20 counts");
  const double n = static_cast<double>(counts.size());
  std::int64_t observed_max = 0;
  for (auto c : counts) {
    if (c < 0) throw std::domain_error("discrete_gof: negative count");
    observed_max = std::max(observed_max, c);
  }
  const std::int64_t top = std::max(support_max, observed_max);
  std::vector<double> observed(static_cast<std::size_t>(top) + 1, 0.0);
  for (auto c : counts) observed[static_cast<std::size_t>(c)] += 1.0;

  struct Bin {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Bin> bins;
  Bin open;
  double cumulative = 0.0;
  for (std::int64_t k = 0; k <= top; ++k) {
    const double p = pmf(k);
    cumulative += p;
    open.expected += n * p;
    open.observed += observed[static_cast<std::size_t>(k)];
    if (open.expected >= 5.0) {
      bins.push_back(open);
      open = {};
    }
  }
  open.expected += n * std::max(0.0, 1.0 - cumulative);
  if (!bins.empty() && open.expected < 5.0) {
    bins.back().expected += open.expected;
    bins.back().observed += open.observed;
  } else {
    bins.push_back(open);
  }
  if (bins.size() < 2) throw std::domain_error("discrete_gof: fewer than two usable bins");

  GofResult out;
  out.bins = bins.size();
  for (const Bin& b : bins) {
    const double diff = b.observed - b.expected;
    out.chi_square += diff * diff / b.expected;
  }
  out.p_value = chi_square_sf(out.chi_square, static_cast<double>(bins.size() - 1));
  return out;
}

double poisson_gof(std::span<const std::int64_t> counts, double mean) {
  if (!(mean > 0.0)) throw std::domain_error("poisson_gof: mean must be positive");
  const boost::math::poisson_distribution<double> dist(mean);
  const auto top = static_cast<std::int64_t>(mean + 12.0 * std::sqrt(mean) + 20.0);
  return discrete_gof(
             counts, [&](std::int64_t k) { return boost::math::pdf(dist, static_cast<double>(k)); },
             top)
      .p_value;
}

double binomial_gof(std::span<const std::int64_t> counts, std::int64_t n, double p) {
  if (n < 1 || !(p > 0.0) || !(p < 1.0)) throw std::domain_error("binomial_gof: bad parameters");
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return discrete_gof(
             counts,
             [&](std::int64_t k) {
               return k > n ? 0.0 : boost::math::pdf(dist, static_cast<double>(k));
             },
             n)
      .p_value;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::domain_error("quantile: empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

}  // namespace nncolor
