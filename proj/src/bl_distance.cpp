#include "nncolor/bl_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace nncolor {

double transport_cost(std::span<const double> supply, std::span<const double> demand,
                      const std::vector<std::vector<double>>& cost) {
  const std::size_t ns = supply.size();
  const std::size_t nt = demand.size();
  if (ns == 0 || nt == 0) return 0.0;
  const double total = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double eps = 1e-14 * std::max(total, 1e-300);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> left(supply.begin(), supply.end());
  std::vector<double> need(demand.begin(), demand.end());
  std::vector<std::vector<double>> flow(ns, std::vector<double>(nt, 0.0));
  std::vector<double> pot_s(ns, 0.0), pot_t(nt, kInf);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) pot_t[j] = std::min(pot_t[j], cost[i][j]);

  std::vector<double> dist_s(ns), dist_t(nt);
  std::vector<std::size_t> prev_of_t(ns), prev_of_s(nt);  // t <- s, s <- t
  std::vector<char> done_s(ns), done_t(nt);

  double remaining = total;
  while (remaining > eps) {
    std::fill(dist_t.begin(), dist_t.end(), kInf);
    std::fill(done_s.begin(), done_s.end(), 0);
    std::fill(done_t.begin(), done_t.end(), 0);
    for (std::size_t i = 0; i < ns; ++i) dist_s[i] = left[i] > eps ? 0.0 : kInf;

    std::size_t target = nt;
    double target_dist = kInf;
    for (;;) {
      // Pick the closest unsettled node on either side.
      double best = kInf;
      std::size_t pick = 0;
      bool pick_s = true;
      for (std::size_t i = 0; i < ns; ++i)
        if (!done_s[i] && dist_s[i] < best) best = dist_s[i], pick = i, pick_s = true;
      for (std::size_t j = 0; j < nt; ++j)
        if (!done_t[j] && dist_t[j] < best) best = dist_t[j], pick = j, pick_s = false;
      if (best == kInf) break;
      if (pick_s) {
        done_s[pick] = 1;
        for (std::size_t j = 0; j < nt; ++j) {
          if (done_t[j]) continue;
          const double reduced = std::max(0.0, cost[pick][j] + pot_s[pick] - pot_t[j]);
          if (best + reduced < dist_t[j]) {
            dist_t[j] = best + reduced;
            prev_of_s[j] = pick;
          }
        }
      } else {
        done_t[pick] = 1;
        if (need[pick] > eps) {
          target = pick;
          target_dist = best;
          break;
        }
        for (std::size_t i = 0; i < ns; ++i) {
          if (done_s[i] || flow[i][pick] <= eps) continue;
          const double reduced = std::max(0.0, -cost[i][pick] + pot_t[pick] - pot_s[i]);
          if (best + reduced < dist_s[i]) {
            dist_s[i] = best + reduced;
            prev_of_t[i] = pick;
          }
        }
      }
    }
    if (target == nt) throw std::logic_error("transport_cost: no augmenting path");

    for (std::size_t i = 0; i < ns; ++i) pot_s[i] += std::min(dist_s[i], target_dist);
    for (std::size_t j = 0; j < nt; ++j) pot_t[j] += std::min(dist_t[j], target_dist);

    // Bottleneck along the alternating path back to a source with spare supply.
    double push = need[target];
    std::size_t j = target;
    for (;;) {
      const std::size_t i = prev_of_s[j];
      if (dist_s[i] == 0.0 && left[i] > eps) {
        push = std::min(push, left[i]);
        break;
      }
      j = prev_of_t[i];
      push = std::min(push, flow[i][j]);
    }
    j = target;
    need[target] -= push;
    for (;;) {
      const std::size_t i = prev_of_s[j];
      flow[i][j] += push;
      if (dist_s[i] == 0.0 && left[i] > eps) {
        left[i] -= push;
        break;
      }
      j = prev_of_t[i];
      flow[i][j] -= push;
    }
    remaining -= push;
  }

  double total_cost = 0.0;
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) total_cost += flow[i][j] * cost[i][j];
  return total_cost;
}

namespace {

struct Snapped {
  std::vector<Point2> points;
  std::vector<double> mass;
};

}  // namespace

BLDistance bl_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int grid_res,
                       std::optional<Window> window) {
  if (grid_res < 2) throw std::domain_error("bl_distance: grid_res must be >= 2");
  for (const auto* mu : {&mu1, &mu2})
    for (const Atom& a : mu->atoms)
      if (!(a.weight >= 0.0)) throw std::domain_error("bl_distance: negative weight");

  double x0, x1, y0, y1;
  if (window) {
    x0 = window->x_min();
    x1 = window->x_max();
    y0 = window->y_min();
    y1 = window->y_max();
  } else {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    for (const auto* mu : {&mu1, &mu2}) {
      for (const Atom& a : mu->atoms) {
        x0 = std::min(x0, a.z.x);
        x1 = std::max(x1, a.z.x);
        y0 = std::min(y0, a.z.y);
        y1 = std::max(y1, a.z.y);
      }
    }
    if (!std::isfinite(x0)) return {};
    // Degenerate extents still need a positive cell size.
    const double pad = 1e-9 * std::max({1.0, std::abs(x0), std::abs(y0)});
    if (x1 - x0 < pad) x1 = x0 + pad;
    if (y1 - y0 < pad) y1 = y0 + pad;
  }
  const double cw = (x1 - x0) / grid_res;
  const double ch = (y1 - y0) / grid_res;

  auto snap = [&](const DiscreteMeasure& mu) {
    std::map<std::pair<int, int>, double> cells;
    for (const Atom& a : mu.atoms) {
      if (a.weight == 0.0) continue;
      Point2 p = window ? window->wrap(a.z) : a.z;
      const int cx = std::clamp(static_cast<int>(std::floor((p.x - x0) / cw)), 0, grid_res - 1);
      const int cy = std::clamp(static_cast<int>(std::floor((p.y - y0) / ch)), 0, grid_res - 1);
      cells[{cx, cy}] += a.weight;
    }
    Snapped s;
    for (const auto& [key, m] : cells) {
      s.points.push_back({x0 + (key.first + 0.5) * cw, y0 + (key.second + 0.5) * ch});
      s.mass.push_back(m);
    }
    return s;
  };
  const Snapped a = snap(mu1);
  const Snapped b = snap(mu2);
  const double m1 = std::accumulate(a.mass.begin(), a.mass.end(), 0.0);
  const double m2 = std::accumulate(b.mass.begin(), b.mass.end(), 0.0);

  // Supplies: atoms of mu1 plus a reservoir holding mu2's mass (unmatched mu2 mass).
  // Demands: atoms of mu2 plus a reservoir absorbing mu1's mass (unmatched mu1 mass).
  const std::size_t ns = a.points.size() + 1;
  const std::size_t nt = b.points.size() + 1;
  std::vector<double> supply(a.mass);
  supply.push_back(m2);
  std::vector<double> demand(b.mass);
  demand.push_back(m1);
  std::vector<std::vector<double>> cost(ns, std::vector<double>(nt, 1.0));
  for (std::size_t i = 0; i + 1 < ns; ++i) {
    for (std::size_t j = 0; j + 1 < nt; ++j) {
      const double d = window ? window->distance(a.points[i], b.points[j])
                              : distance(a.points[i], b.points[j]);
      cost[i][j] = std::min(d, 2.0);
    }
  }
  cost[ns - 1][nt - 1] = 0.0;

  BLDistance out;
  out.distance = transport_cost(supply, demand, cost);
  out.discretization_bound = 0.5 * std::hypot(cw, ch) * (m1 + m2);
  out.support1 = a.points.size();
  out.support2 = b.points.size();
  return out;
}

}  // namespace nncolor
