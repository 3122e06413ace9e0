#include "nncolor/box_count.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nncolor {

std::size_t BoolMask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BoolMask boundary_mask(const PartitionRaster& r) {
  BoolMask m(r.resolution, r.resolution);
  for (int row = 0; row < r.resolution; ++row) {
    for (int col = 0; col < r.resolution; ++col) {
      const ParticleId here = r.at(col, row);
      if (col + 1 < r.resolution && r.at(col + 1, row) != here) {
        m.set(col, row);
        m.set(col + 1, row);
      }
      if (row + 1 < r.resolution && r.at(col, row + 1) != here) {
        m.set(col, row);
        m.set(col, row + 1);
      }
    }
  }
  return m;
}

BoxCountResult box_count_dimension(const BoolMask& mask, int max_scales) {
  if (mask.width < 8 || mask.height < 8) {
    throw std::domain_error("box_count_dimension: mask must be at least 8x8");
  }
  if (mask.count() == 0) throw std::domain_error("box_count_dimension: empty mask");
  if (max_scales != 0 && max_scales < 4) {
    throw std::domain_error("box_count_dimension: need at least 4 scales");
  }

  BoxCountResult out;
  const int extent = std::max(mask.width, mask.height);
  for (int side = 1;; side *= 2) {
    const int bx = (mask.width + side - 1) / side;
    const int by = (mask.height + side - 1) / side;
    std::vector<std::uint8_t> occupied(static_cast<std::size_t>(bx) * by, 0);
    for (int y = 0; y < mask.height; ++y) {
      for (int x = 0; x < mask.width; ++x) {
        if (mask.at(x, y)) occupied[static_cast<std::size_t>(y / side) * bx + x / side] = 1;
      }
    }
    out.scales.push_back(side);
    out.counts.push_back(std::count(occupied.begin(), occupied.end(), std::uint8_t{1}));
    if (side >= extent || static_cast<int>(out.scales.size()) == max_scales) break;
  }

  out.fit_begin = 1;
  out.fit_end = out.scales.size() - 1;
  std::vector<double> xs, ys;
  for (std::size_t i = out.fit_begin; i < out.fit_end; ++i) {
    xs.push_back(-std::log(static_cast<double>(out.scales[i])));
    ys.push_back(std::log(static_cast<double>(out.counts[i])));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  out.slope = sxy / sxx;
  // A constant count is fitted exactly by slope 0.
  out.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  out.reported = out.r2 >= kBoxCountMinR2;
  return out;
}

}  // namespace nncolor
