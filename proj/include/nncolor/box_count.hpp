#pragma once

#include <cstdint>
#include <vector>

#include "nncolor/forest.hpp"

namespace nncolor {

struct BoolMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  ///< row-major

  BoolMask() = default;
  BoolMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}
  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v = true) {
    bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  std::size_t count() const;
};

/// Pixels having a 4-neighbour with a different label.
BoolMask boundary_mask(const PartitionRaster& r);

inline constexpr double kBoxCountMinR2 = 0.98;

struct BoxCountResult {
  std::vector<int> scales;            ///< box side in pixels: 1, 2, 4, ...
  std::vector<std::int64_t> counts;   ///< occupied boxes per scale
  std::size_t fit_begin = 0;          ///< fitted scales are [fit_begin, fit_end)
  std::size_t fit_end = 0;
  double slope = 0.0;
  double r2 = 0.0;
  /// The slope is a dimension estimate only when r2 >= kBoxCountMinR2.
  bool reported = false;
};

/// Occupied-box counts over a dyadic ladder of box sides up to the mask size; least-squares
/// slope of log count against log(1/side) with the smallest and largest sides dropped.
/// max_scales > 0 truncates the ladder to that many sides (at least 4).
/// Throws std::domain_error for an empty mask or a mask smaller than 8 pixels a side.
BoxCountResult box_count_dimension(const BoolMask& mask, int max_scales = 0);

}  // namespace nncolor
