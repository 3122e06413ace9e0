#include "nncolor/io.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "nncolor/config.hpp"
#include "nncolor/rng.hpp"

namespace nncolor {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const RunMeta& meta,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot write " + path);
  out_ << "# seed=" << meta.seed << ", config_hash=" << meta.config_hash
       << ", version=" << kVersion << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
  if (fields.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_double(v);
          } else {
            out_ << v;
          }
        },
        fields[i]);
  }
  out_ << '\n';
}

void write_forest_csv(const std::string& path, const Forest& f, const RunMeta& meta) {
  CsvWriter w(path, meta, {"id", "t", "x", "y", "parent"});
  for (const Particle& p : f.particles) {
    w.row({p.id, p.t, p.z.x, p.z.y,
           p.parent ? CsvField{static_cast<std::int64_t>(*p.parent)} : CsvField{std::int64_t{-1}}});
  }
}

void write_label_areas_csv(const std::string& path, const PartitionRaster& r,
                           const RunMeta& meta) {
  CsvWriter w(path, meta, {"label", "pixels", "area"});
  for (const auto& [label, count] : label_pixel_counts(r)) {
    w.row({label, count, static_cast<double>(count) * r.pixel_area()});
  }
}

void write_trace_csv(const std::string& path, std::span<const TraceRow> trace,
                     const RunMeta& meta) {
  CsvWriter w(path, meta, {"step", "tau", "x", "y", "area_inc", "area_se", "diam"});
  for (const TraceRow& t : trace) {
    w.row({static_cast<std::uint64_t>(t.step), t.tau, t.z.x, t.z.y, t.area_inc, t.area_se,
           t.diam});
  }
}

void write_merge_log_csv(const std::string& path, std::span<const MergeEvent> events,
                         const RunMeta& meta) {
  CsvWriter w(path, meta, {"time", "deleted", "absorber", "area"});
  for (const MergeEvent& e : events) w.row({e.time, e.deleted, e.absorber, e.area});
}

void write_coalescence_csv(const std::string& path, std::span<const CoalescenceRow> rows,
                           const RunMeta& meta) {
  CsvWriter w(path, meta,
              {"run_id", "seed", "separation", "t0", "T_coal", "I_coal", "zx", "zy", "censored"});
  for (const CoalescenceRow& r : rows) {
    w.row({static_cast<std::uint64_t>(r.run_id), r.seed, r.separation, r.t0, r.record.time,
           static_cast<std::uint64_t>(r.record.steps), r.record.position.x, r.record.position.y,
           std::int64_t{r.record.censored ? 1 : 0}});
  }
}

std::array<std::uint8_t, 3> label_color(ParticleId label) {
  const std::uint64_t h = splitmix64(label);
  return {static_cast<std::uint8_t>(h), static_cast<std::uint8_t>(h >> 8),
          static_cast<std::uint8_t>(h >> 16)};
}

std::uint32_t RgbImage::at(int x, int y) const {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
  return (std::uint32_t{rgb[i]} << 16) | (std::uint32_t{rgb[i + 1]} << 8) | rgb[i + 2];
}

void write_ppm(const std::string& path, const PartitionRaster& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "P6\n" << r.resolution << ' ' << r.resolution << "\n255\n";
  std::vector<char> line(3 * static_cast<std::size_t>(r.resolution));
  for (int row = r.resolution - 1; row >= 0; --row) {
    for (int col = 0; col < r.resolution; ++col) {
      const auto c = label_color(r.at(col, row));
      for (int k = 0; k < 3; ++k) line[3 * col + k] = static_cast<char>(c[k]);
    }
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

namespace {

int read_header_int(std::istream& in) {
  int c = in.peek();
  while (c != EOF) {
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string skip;
      std::getline(in, skip);
    } else {
      break;
    }
    c = in.peek();
  }
  int v = -1;
  if (!(in >> v)) throw std::runtime_error("read_ppm: malformed header");
  return v;
}

}  // namespace

RgbImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (magic != "P6") throw std::runtime_error("read_ppm: not a binary PPM (P6)");
  RgbImage img;
  img.width = read_header_int(in);
  img.height = read_header_int(in);
  const int maxval = read_header_int(in);
  if (img.width <= 0 || img.height <= 0 || maxval != 255) {
    throw std::runtime_error("read_ppm: unsupported dimensions or maxval");
  }
  in.get();  // single whitespace before the raster
  img.rgb.resize(3 * static_cast<std::size_t>(img.width) * img.height);
  in.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.rgb.size())) {
    throw std::runtime_error("read_ppm: truncated raster");
  }
  return img;
}

BoolMask boundary_mask(const RgbImage& img) {
  BoolMask m(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const std::uint32_t here = img.at(x, y);
      if (x + 1 < img.width && img.at(x + 1, y) != here) {
        m.set(x, y);
        m.set(x + 1, y);
      }
      if (y + 1 < img.height && img.at(x, y + 1) != here) {
        m.set(x, y);
        m.set(x, y + 1);
      }
    }
  }
  return m;
}

}  // namespace nncolor
