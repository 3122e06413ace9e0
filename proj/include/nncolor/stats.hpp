#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nncolor {

/// Mergeable mean/variance accumulator (Chan et al. parallel update).
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  ///< unbiased sample variance
  double std_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

RunningStats summarize(std::span<const double> xs);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

struct KSResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// One-sample KS test against a continuous CDF (Stephens' finite-n correction).
KSResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

/// KS p-value for a statistic D on n one-sample observations.
double ks_p_value(double statistic, double n_effective);

/// Two-sample KS test.
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct GofResult {
  double chi_square = 0.0;
  std::size_t bins = 0;
  double p_value = 0.0;
};

/// Chi-square goodness of fit of integer counts against a pmf on {0, 1, ...}. Adjacent values
/// are pooled until every bin expects at least 5 observations; the top bin absorbs the tail.
/// Throws std::domain_error for fewer than 20 counts or fewer than two usable bins.
GofResult discrete_gof(std::span<const std::int64_t> counts,
                       const std::function<double(std::int64_t)>& pmf, std::int64_t support_max);

/// Chi-square GOF p-value of counts against Poisson(mean).
double poisson_gof(std::span<const std::int64_t> counts, double mean);

/// Chi-square GOF p-value of counts against Binomial(n, p).
double binomial_gof(std::span<const std::int64_t> counts, std::int64_t n, double p);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double x, double dof);

/// Empirical quantile (linear interpolation); sorts a copy.
double quantile(std::vector<double> xs, double q);

}  // namespace nncolor
