#include "nncolor/tail_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nncolor/stats.hpp"

namespace nncolor {

std::string_view to_string(TailMethod m) {
  return m == TailMethod::power ? "power" : "exponential";
}

namespace {

constexpr std::size_t kMinExceedances = 10;

TailFit fit_exceedances(std::span<const CensoredSample> samples, double threshold,
                        TailMethod method) {
  TailFit fit;
  fit.method = method;
  fit.threshold = threshold;
  double exposure = 0.0;
  for (const auto& s : samples) {
    if (!(s.value > threshold)) continue;
    exposure += method == TailMethod::power ? std::log(s.value / threshold) : s.value - threshold;
    fit.max_value = std::max(fit.max_value, s.value);
    if (s.censored) {
      ++fit.censored;
    } else {
      ++fit.n_used;
    }
  }
  if (fit.n_used < kMinExceedances) {
    throw std::domain_error("tail fit: fewer than 10 uncensored exceedances");
  }
  fit.exponent = static_cast<double>(fit.n_used) / exposure;
  fit.std_error = fit.exponent / std::sqrt(static_cast<double>(fit.n_used));
  return fit;
}

}  // namespace

TailFit power_tail_fit(std::span<const CensoredSample> samples, double r_min) {
  if (!(r_min > 0.0)) throw std::domain_error("power_tail_fit: r_min must be positive");
  return fit_exceedances(samples, r_min, TailMethod::power);
}

TailFit exp_tail_fit(std::span<const CensoredSample> samples, double t_min) {
  return fit_exceedances(samples, t_min, TailMethod::exponential);
}

TailFit tail_fit(std::span<const CensoredSample> samples, double threshold, TailMethod method) {
  return method == TailMethod::power ? power_tail_fit(samples, threshold)
                                     : exp_tail_fit(samples, threshold);
}

StabilityDiagnostic tail_stability(std::span<const CensoredSample> samples, double base,
                                   TailMethod method, double z_limit) {
  std::vector<double> exceedances;
  for (const auto& s : samples) {
    if (!s.censored && s.value > base) exceedances.push_back(s.value);
  }
  StabilityDiagnostic diag;
  diag.fits.push_back(tail_fit(samples, base, method));
  for (double q : {0.5, 0.9}) {
    diag.fits.push_back(tail_fit(samples, quantile(exceedances, q), method));
  }
  for (std::size_t i = 0; i < diag.fits.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.fits.size(); ++j) {
      const auto& a = diag.fits[i];
      const auto& b = diag.fits[j];
      const double z = std::abs(a.exponent - b.exponent) /
                       std::hypot(a.std_error, b.std_error);
      diag.max_z = std::max(diag.max_z, z);
    }
  }
  diag.stable = diag.max_z <= z_limit;
  return diag;
}

}  // namespace nncolor
