#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nncolor/box_count.hpp"
#include "nncolor/coupled_ea.hpp"
#include "nncolor/ea.hpp"
#include "nncolor/forest.hpp"
#include "nncolor/partition.hpp"

namespace nncolor {

/// Provenance written as the first line of every CSV.
struct RunMeta {
  std::uint64_t seed = 0;
  std::string config_hash;
};

using CsvField = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// Formats a double with 17 significant digits so output is reproducible byte for byte.
std::string format_double(double x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const RunMeta& meta, const std::vector<std::string>& header);
  void row(const std::vector<CsvField>& fields);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

void write_forest_csv(const std::string& path, const Forest& f, const RunMeta& meta);
void write_label_areas_csv(const std::string& path, const PartitionRaster& r, const RunMeta& meta);
void write_trace_csv(const std::string& path, std::span<const TraceRow> trace, const RunMeta& meta);
void write_merge_log_csv(const std::string& path, std::span<const MergeEvent> events,
                         const RunMeta& meta);

struct CoalescenceRow {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  double separation = 0.0;
  double t0 = 0.0;
  CoalescenceRecord record;
};
void write_coalescence_csv(const std::string& path, std::span<const CoalescenceRow> rows,
                           const RunMeta& meta);

std::array<std::uint8_t, 3> label_color(ParticleId label);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  ///< row-major, 3 bytes per pixel, top row first
  std::uint32_t at(int x, int y) const;
};

/// Binary P6 with row 0 of the raster (smallest y) written last, so north is up.
void write_ppm(const std::string& path, const PartitionRaster& r);
RgbImage read_ppm(const std::string& path);
/// Pixels whose colour differs from a 4-neighbour; both pixels of each pair are marked.
BoolMask boundary_mask(const RgbImage& img);

}  // namespace nncolor
