#include "nncolor/coupled_ea.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nncolor {

CoupledEAState coupled_init(Point2 z1, Point2 z2, double t0, RngStream& rng, EAOptions options) {
  if (!(t0 >= 0.0)) throw std::domain_error("coupled_init: t0 must be >= 0");
  CoupledEAState s;
  s.t0_offset = t0;
  s.comp1 = ea_init(z1, rng, options);
  s.comp1.tau -= t0;
  s.comp1.trace.front().tau = s.comp1.tau;
  s.comp2 = ea_init(z2, rng, options);
  return s;
}

void coupled_step(CoupledEAState& s, RngStream& rng) {
  if (s.coalesced) throw std::domain_error("coupled_step: process already coalesced");
  if (s.comp1.tau == s.comp2.tau) {
    throw std::logic_error("coupled_step: components share a time before coalescence");
  }
  EAState& mover = s.comp1.tau < s.comp2.tau ? s.comp1 : s.comp2;
  const EAState& other = s.comp1.tau < s.comp2.tau ? s.comp2 : s.comp1;

  const double planted = distance(mover.z, other.z);
  const std::array<const DiscUnion*, 2> excluded{&s.comp1.C, &s.comp2.C};
  const auto next = nearest_in_complement(mover.z, excluded, std::exp(-mover.tau), rng, planted);
  ++s.step;
  if (!next) {
    s.coalesced = Coalescence{s.step, other.tau, other.z};
    return;
  }
  ea_extend(mover, *next, rng);
}

CoalescenceRecord coupled_run(CoupledEAState& s, std::size_t max_steps, RngStream& rng) {
  for (std::size_t k = 0; k < max_steps && !s.coalesced; ++k) coupled_step(s, rng);
  CoalescenceRecord rec;
  rec.steps = s.step;
  if (s.coalesced) {
    rec.time = s.coalesced->time;
    rec.position = s.coalesced->position;
  } else {
    rec.censored = true;
    const EAState& lag = s.comp1.tau < s.comp2.tau ? s.comp1 : s.comp2;
    rec.time = lag.tau;
    rec.position = lag.z;
  }
  return rec;
}

ProbabilityEstimate lzz_event_mc(double d, double r, double lambda, std::size_t trials,
                                 RngStream& rng) {
  if (trials == 0) throw std::domain_error("lzz_event_mc: trials must be >= 1");
  if (!(lambda > 0.0) || d < 0.0 || r < 0.0) throw std::domain_error("lzz_event_mc: bad input");
  const Point2 z1{0.0, 0.0};
  const Point2 z2{d, 0.0};
  const Point2 mid{d / 2.0, 0.0};
  const double width = 1.0 / std::sqrt(lambda) + d;
  std::size_t hits = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    double best1 = std::numeric_limits<double>::infinity();
    double best2 = best1;
    std::size_t arg1 = 0, arg2 = 0, label = 0;
    for (std::size_t k = 0;; ++k) {
      const double inner = static_cast<double>(k) * width;
      const double outer = inner + width;
      const double span2 = outer * outer - inner * inner;
      const auto count = rng.poisson(lambda * std::numbers::pi * span2);
      for (std::uint64_t j = 0; j < count; ++j, ++label) {
        const double rho = std::sqrt(inner * inner + rng.uniform() * span2);
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const Point2 p{mid.x + rho * std::cos(phi), mid.y + rho * std::sin(phi)};
        const double d1 = distance(p, z1);
        const double d2 = distance(p, z2);
        if (d1 < best1) best1 = d1, arg1 = label;
        if (d2 < best2) best2 = d2, arg2 = label;
      }
      // Points outside this annulus are at least outer - d/2 from either target.
      const double reach = outer - d / 2.0;
      if (best1 <= reach && best2 <= reach) break;
    }
    if (arg1 == arg2 && std::min(best1, best2) > r) ++hits;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

double lzz_bound(double d, double r, double lambda, double c0) {
  return std::exp(-lambda * std::numbers::pi * (r + d) * (r + d)) -
         2.0 * c0 * std::sqrt(lambda) * d;
}

GapDensity gap_density(double lambda, std::size_t trials, double bin_width, double max_gap,
                       RngStream& rng) {
  if (!(lambda > 0.0) || trials == 0 || !(bin_width > 0.0) || !(max_gap > bin_width)) {
    throw std::domain_error("gap_density: bad input");
  }
  GapDensity out;
  out.bin_width = bin_width;
  const auto bins = static_cast<std::size_t>(std::ceil(max_gap / bin_width));
  std::vector<std::size_t> counts(bins, 0);
  const double width = 1.0 / std::sqrt(lambda);
  double gap_sum = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    double first = std::numeric_limits<double>::infinity();
    double second = first;
    for (std::size_t k = 0;; ++k) {
      const double inner = static_cast<double>(k) * width;
      const double outer = inner + width;
      const double span2 = outer * outer - inner * inner;
      const auto count = rng.poisson(lambda * std::numbers::pi * span2);
      for (std::uint64_t j = 0; j < count; ++j) {
        const double rho = std::sqrt(inner * inner + rng.uniform() * span2);
        if (rho < first) {
          second = first;
          first = rho;
        } else if (rho < second) {
          second = rho;
        }
      }
      if (second <= outer) break;
    }
    const double gap = second - first;
    gap_sum += gap;
    const auto bin = static_cast<std::size_t>(gap / bin_width);
    if (bin < bins) ++counts[bin];
  }
  const double n = static_cast<double>(trials);
  out.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.density[b] = static_cast<double>(counts[b]) / (n * bin_width);
    out.max_density = std::max(out.max_density, out.density[b]);
  }
  out.mean_gap = gap_sum / n;
  return out;
}

}  // namespace nncolor
