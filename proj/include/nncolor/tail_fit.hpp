#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace nncolor {

/// Observation that may be right-censored (the true value exceeds `value`).
struct CensoredSample {
  double value = 0.0;
  bool censored = false;
};

enum class TailMethod { power, exponential };
std::string_view to_string(TailMethod m);

struct TailFit {
  double exponent = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;
  double max_value = 0.0;
  std::size_t n_used = 0;    ///< uncensored exceedances
  std::size_t censored = 0;  ///< censored exceedances (they add exposure only)
  TailMethod method = TailMethod::power;
};

/// Censoring-aware maximum-likelihood tail index on exceedances of r_min:
/// alpha = k / sum log(x_i / r_min), SE = alpha / sqrt(k), with k uncensored exceedances.
/// Throws std::domain_error with fewer than 10 uncensored exceedances or r_min <= 0.
TailFit power_tail_fit(std::span<const CensoredSample> samples, double r_min);

/// Censoring-aware maximum-likelihood exponential rate on exceedances of t_min:
/// rho = k / sum (x_i - t_min), SE = rho / sqrt(k).
TailFit exp_tail_fit(std::span<const CensoredSample> samples, double t_min);

TailFit tail_fit(std::span<const CensoredSample> samples, double threshold, TailMethod method);

struct StabilityDiagnostic {
  std::vector<TailFit> fits;
  /// Largest |difference| / combined SE over pairs of fits.
  double max_z = 0.0;
  /// False means the estimate drifts with the threshold: the tail model does not fit.
  bool stable = true;
};

/// Refits at `base` and at the 50% and 90% quantiles of the uncensored exceedances of `base`;
/// flags instability when two fits differ by more than `z_limit` combined standard errors.
StabilityDiagnostic tail_stability(std::span<const CensoredSample> samples, double base,
                                   TailMethod method, double z_limit = 3.0);

}  // namespace nncolor
