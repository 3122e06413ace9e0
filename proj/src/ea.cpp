#include "nncolor/ea.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nncolor {

EAState ea_init(Point2 z0, RngStream& rng, EAOptions options) {
  EAState s;
  s.C.add(Disc(z0, 0.0));
  s.z = z0;
  s.tau = rng.exponential();
  s.options = options;
  TraceRow row;
  row.tau = s.tau;
  row.z = z0;
  row.rate_tau = std::numeric_limits<double>::quiet_NaN();
  s.trace.push_back(row);
  return s;
}

std::optional<Point2> nearest_in_complement(Point2 z, std::span<const DiscUnion* const> excluded,
                                            double rate, RngStream& rng, double cutoff) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("nearest_in_complement: rate must be positive");
  }
  double diam = 0.0;
  for (const DiscUnion* du : excluded) {
    if (!du->empty()) diam = std::max(diam, du_diameter(*du));
  }
  const double width = std::max(1.0 / std::sqrt(rate), diam / 8.0);
  auto excluded_at = [&](Point2 p) {
    return std::any_of(excluded.begin(), excluded.end(),
                       [p](const DiscUnion* du) { return du->contains(p); });
  };

  double best_rho = std::numeric_limits<double>::infinity();
  Point2 best{};
  for (std::size_t k = 0;; ++k) {
    const double inner = static_cast<double>(k) * width;
    const double outer = inner + width;
    if (inner >= cutoff) return std::nullopt;
    const double inner2 = inner * inner;
    const double span2 = outer * outer - inner2;
    const auto count = rng.poisson(rate * std::numbers::pi * span2);
    for (std::uint64_t j = 0; j < count; ++j) {
      const double rho = std::sqrt(inner2 + rng.uniform() * span2);
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      if (rho >= best_rho) continue;
      const Point2 p{z.x + rho * std::cos(phi), z.y + rho * std::sin(phi)};
      if (excluded_at(p)) continue;
      best_rho = rho;
      best = p;
    }
    if (best_rho <= outer) {
      if (best_rho > cutoff) return std::nullopt;
      return best;
    }
  }
}

Point2 nearest_in_complement(Point2 z, const DiscUnion& C, double rate, RngStream& rng) {
  const std::array<const DiscUnion*, 1> ex{&C};
  return *nearest_in_complement(z, ex, rate, rng);
}

void ea_extend(EAState& s, Point2 next, RngStream& rng) {
  const double radius = distance(s.z, next);
  const Disc added(s.z, radius);

  TraceRow row;
  row.rate_tau = s.tau;
  if (s.options.area_samples > 0) {
    const auto inc = disc_increment_mc(s.C, added, s.options.area_samples, rng);
    row.area_inc = inc.estimate;
    row.area_se = inc.std_error;
  } else {
    row.area_inc = std::numeric_limits<double>::quiet_NaN();
    row.area_se = std::numeric_limits<double>::quiet_NaN();
  }

  // Diameter grows only through pairs involving the new disc.
  double diam = std::max(s.diam, 2.0 * radius);
  for (const Disc& d : s.C.discs()) {
    diam = std::max(diam, distance(d.center(), s.z) + d.radius() + radius);
  }
  s.C.add(added);
  s.diam = diam;

  if (s.options.exact_area) {
    const double area = du_area_exact(s.C);
    const double inc = std::max(area - s.area, 0.0);
    row.theta = std::exp(-s.tau) * inc;
    s.area = area;
  } else {
    row.theta = std::numeric_limits<double>::quiet_NaN();
    s.area = std::numeric_limits<double>::quiet_NaN();
  }

  s.z = next;
  s.tau += rng.exponential();
  ++s.step;

  row.step = s.step;
  row.tau = s.tau;
  row.z = s.z;
  row.area = s.area;
  row.diam = s.diam;
  s.trace.push_back(row);
}

void ea_step(EAState& s, RngStream& rng) {
  const Point2 next = nearest_in_complement(s.z, s.C, std::exp(-s.tau), rng);
  ea_extend(s, next, rng);
}

void ea_run_until(EAState& s, double t, RngStream& rng) {
  while (s.tau < t) ea_step(s, rng);
}

double chi_sample(RngStream& rng) {
  const double scale = 2.0 / std::sqrt(std::numbers::pi);
  double sigma = 0.0;
  double partial = 0.0;
  for (std::size_t u = 1;; ++u) {
    sigma += rng.exponential();
    const double decay = std::exp(-sigma);
    partial += static_cast<double>(u) * decay * std::sqrt(rng.exponential());
    const double remainder = decay * static_cast<double>(u + 2);
    if (remainder < 1e-12 * partial) break;
  }
  return scale * partial;
}

double occupation_bad_fraction(std::span<const TraceRow> trace, double b, double T) {
  if (!(T > 0.0)) throw std::domain_error("occupation_bad_fraction: T must be positive");
  if (trace.empty() || trace.back().tau < T) {
    throw std::domain_error("occupation_bad_fraction: trace does not cover [0, T]");
  }
  double bad = 0.0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double lo = trace[i - 1].tau;
    const double hi = trace[i].tau;
    if (lo >= T) break;
    if (std::exp(-hi / 2.0) * trace[i].diam > b) {
      bad += std::min(hi, T) - std::max(lo, 0.0);
    }
  }
  return bad / T;
}

}  // namespace nncolor
