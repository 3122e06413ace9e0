#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nncolor/acceptance.hpp"
#include "nncolor/box_count.hpp"
#include "nncolor/config.hpp"
#include "nncolor/coupled_ea.hpp"
#include "nncolor/ea.hpp"
#include "nncolor/forest.hpp"
#include "nncolor/io.hpp"
#include "nncolor/partition.hpp"
#include "nncolor/rng.hpp"
#include "nncolor/shot_noise.hpp"
#include "nncolor/stats.hpp"
#include "nncolor/tail_fit.hpp"

namespace fs = std::filesystem;
using namespace nncolor;
using nlohmann::json;

namespace {

// Flags given on the command line, by config key; applied over the config file.
struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> raw;
};

void add_flags(CLI::App* cmd, Overrides& ov, const std::vector<std::string>& keys) {
  cmd->add_option("--config", ov.config_path, "JSON config; flags override its values");
  for (const auto& key : keys) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_option("--" + flag, ov.raw[key]);
  }
}

json parse_value(const ConfigKey& k, const std::string& text) {
  switch (k.kind) {
    case ValueKind::integer:
      return std::stoll(text);
    case ValueKind::number:
      return std::stod(text);
    case ValueKind::string:
      return text;
    case ValueKind::number_list: {
      json out = json::array();
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
      }
      return out;
    }
  }
  return nullptr;
}

Config resolve(const Overrides& ov, CLI::App* cmd) {
  Config cfg = ov.config_path.empty() ? Config() : Config::from_file(ov.config_path);
  for (const auto& key : config_schema()) {
    auto it = ov.raw.find(key.name);
    if (it == ov.raw.end()) continue;
    std::string flag = key.name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (cmd->count("--" + flag) == 0) continue;
    try {
      cfg.set(key.name, parse_value(key, it->second));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("--" + flag + ": " + e.what());
    }
  }
  return cfg;
}

std::string prepare_out_dir(const Config& cfg) {
  const std::string dir = cfg.string("out_dir");
  fs::create_directories(dir);
  return dir;
}

RunMeta meta_of(const Config& cfg) { return {cfg.seed(), cfg.hash()}; }

std::vector<Seed> parse_seeds(const std::string& text) {
  std::vector<Seed> seeds;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--seeds: expected x,y;x,y;...");
    seeds.push_back({{std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))},
                     static_cast<std::uint32_t>(seeds.size())});
  }
  return seeds;
}

int cmd_color(const Config& cfg) {
  const std::string dir = prepare_out_dir(cfg);
  RngStream rng(cfg.seed(), 0);
  const bool elementary = cfg.string("mode") == "elementary";
  const double side = cfg.number("side");
  double t1 = cfg.number("t1");
  Forest f = elementary
                 ? grow_elementary(parse_seeds(cfg.string("seeds")),
                                   static_cast<std::size_t>(cfg.integer("n")),
                                   Window::square(side, Topology::plane), rng)
                 : grow_spacetime(t1, cfg.number("t2"), cfg.window(), rng);
  if (elementary) t1 = 0.0;
  for (const auto& w : f.warnings) std::cerr << "warning: " << w << "\n";
  const auto meta = meta_of(cfg);
  write_forest_csv(dir + "/forest.csv", f, meta);
  const auto raster = rasterize_voronoi(f, t1, static_cast<int>(cfg.integer("resolution")));
  write_ppm(dir + "/partition.ppm", raster);
  write_label_areas_csv(dir + "/label_areas.csv", raster, meta);
  CsvWriter b(dir + "/boundary.csv", meta, {"resolution", "labels", "boundary_length"});
  const double len = boundary_length(raster);
  b.row({static_cast<std::int64_t>(raster.resolution),
         static_cast<std::uint64_t>(label_pixel_counts(raster).size()), len});
  std::cout << f.size() << " particles, boundary length " << len << "\n";
  return 0;
}

int cmd_ea(const Config& cfg) {
  const std::string dir = prepare_out_dir(cfg);
  const auto meta = meta_of(cfg);
  const auto reps = static_cast<std::uint64_t>(cfg.integer("replicates"));
  const auto steps = cfg.integer("steps");
  const double until_t = cfg.number("until_t");
  const double b = cfg.number("level_b");
  const EAOptions opts{static_cast<std::size_t>(cfg.integer("area_samples")),
                       cfg.integer("area_samples") > 0};
  CsvWriter summary(dir + "/ea_summary.csv", meta,
                    {"run", "steps", "tau", "diam", "scaled_displacement", "horizon",
                     "occupation_above_b"});
  RunningStats occ;
  for (std::uint64_t run = 0; run < reps; ++run) {
    RngStream rng(cfg.seed(), run);
    EAState s = ea_init({0, 0}, rng, opts);
    if (steps > 0) {
      for (std::int64_t i = 0; i < steps; ++i) ea_step(s, rng);
    } else {
      ea_run_until(s, until_t, rng);
    }
    const double T = steps > 0 ? s.tau : until_t;
    const double frac = T > 0.0 ? occupation_bad_fraction(s.trace, b, T) : 0.0;
    occ.add(frac);
    const double t_ref = steps > 0 ? s.tau : until_t;
    summary.row({run, static_cast<std::uint64_t>(s.step), s.tau, s.diam,
                 std::exp(-t_ref / 2.0) * distance(s.z, {0, 0}), T, frac});
    if (run == 0) write_trace_csv(dir + "/trace.csv", s.trace, meta);
  }

  RngStream chi_rng(cfg.seed(), reps);
  std::vector<double> chi(static_cast<std::size_t>(cfg.integer("chi_samples")));
  for (double& x : chi) x = chi_sample(chi_rng);
  CsvWriter tail(dir + "/chi_tail.csv", meta, {"r", "G", "std_error"});
  for (double r = 0.0; !chi.empty() && r <= 16.0; r += 0.25) {
    const double n = static_cast<double>(chi.size());
    const double g =
        static_cast<double>(std::count_if(chi.begin(), chi.end(), [r](double x) { return x > r; })) / n;
    tail.row({r, g, std::sqrt(g * (1 - g) / n)});
  }

  RngStream sn_rng(cfg.seed(), reps + 1);
  const double horizon = std::max(until_t, 1.0) * 500.0;
  CsvWriter sn(dir + "/shot_noise.csv", meta, {"kind", "horizon", "time_average", "level", "occupation"});
  const std::vector<double> levels{b};
  for (auto kind : {ShotNoiseKind::V, ShotNoiseKind::W}) {
    const auto run = shot_noise_run(kind, horizon, sn_rng, levels);
    sn.row({std::string(kind == ShotNoiseKind::V ? "V" : "W"), horizon, run.time_average, b,
            run.occupation[0]});
  }
  if (!chi.empty()) std::cout << "chi mean " << summarize(chi).mean() << "; ";
  std::cout << "mean occupation above " << b << ": " << occ.mean() << "\n";
  return 0;
}

void write_fit(CsvWriter& w, const std::string& quantity, std::span<const CensoredSample> xs,
               double threshold, TailMethod method) {
  try {
    const auto st = tail_stability(xs, threshold, method);
    const TailFit& f = st.fits.front();
    w.row({quantity, std::string(to_string(method)), f.threshold, f.exponent, f.std_error,
           static_cast<std::uint64_t>(f.n_used), static_cast<std::uint64_t>(f.censored),
           std::string(st.stable ? "stable" : "unstable"), st.max_z});
    std::cout << quantity << " " << to_string(method) << " exponent " << f.exponent << " +- "
              << f.std_error << (st.stable ? "" : " (threshold-unstable)") << "\n";
  } catch (const std::domain_error& e) {
    std::cerr << quantity << ": " << e.what() << "\n";
  }
}

int cmd_coalesce(const Config& cfg) {
  const std::string dir = prepare_out_dir(cfg);
  const auto meta = meta_of(cfg);
  const auto reps = static_cast<std::uint64_t>(cfg.integer("replicates"));
  const double sep = cfg.number("separation");
  const double t0 = cfg.number("t0");
  const auto max_steps = static_cast<std::size_t>(cfg.integer("max_steps"));
  std::vector<CoalescenceRow> rows;
  std::vector<CensoredSample> times, radii;
  for (std::uint64_t run = 0; run < reps; ++run) {
    RngStream rng(cfg.seed(), run);
    CoupledEAState s = coupled_init({0, 0}, {sep, 0}, t0, rng);
    const auto rec = coupled_run(s, max_steps, rng);
    rows.push_back({run, cfg.seed(), sep, t0, rec});
    times.push_back({rec.time, rec.censored});
    radii.push_back({distance(rec.position, {sep / 2.0, 0.0}), rec.censored});
  }
  write_coalescence_csv(dir + "/coalescence.csv", rows, meta);

  // Empirical survival of both quantities for log-log and log-linear plots.
  CsvWriter surv(dir + "/survival.csv", meta, {"quantity", "value", "survival"});
  for (const auto& [name, xs] : {std::pair{"time", &times}, std::pair{"radius", &radii}}) {
    std::vector<double> v;
    for (const auto& c : *xs) v.push_back(c.value);
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      surv.row({std::string(name), v[i], (n - static_cast<double>(i)) / n});
    }
  }
  CsvWriter fits(dir + "/fits.csv", meta,
                 {"quantity", "method", "threshold", "exponent", "std_error", "n_used", "censored",
                  "stability", "max_z"});
  std::vector<double> tv, rv;
  for (const auto& c : times) tv.push_back(c.value);
  for (const auto& c : radii) rv.push_back(c.value);
  if (!tv.empty()) {
    write_fit(fits, "time", times, quantile(tv, 0.5), TailMethod::exponential);
    const double r_min = quantile(rv, 0.5);
    if (r_min > 0.0) write_fit(fits, "radius", radii, r_min, TailMethod::power);
  }
  const auto censored = std::count_if(times.begin(), times.end(), [](auto& c) { return c.censored; });
  std::cout << censored << "/" << reps << " runs timed out\n";
  return 0;
}

void write_profile(const std::string& path, const CellMap& cells, const RunMeta& meta) {
  CsvWriter w(path, meta, {"rank", "id", "fraction"});
  std::uint64_t rank = 0;
  for (const auto& [id, frac] : cell_area_profile(cells)) w.row({rank++, id, frac});
}

int cmd_merge(const Config& cfg) {
  const std::string dir = prepare_out_dir(cfg);
  const auto meta = meta_of(cfg);
  const double t_from = cfg.number("t_from");
  const double t_to = cfg.number("t_to");
  if (!(t_to < t_from)) throw std::invalid_argument("--t-to must be smaller than --t-from");
  // Torus sized so that n_init particles are expected at t_from.
  const double side = std::sqrt(static_cast<double>(cfg.integer("n_init")) * std::exp(-t_from));
  const Window w = Window::square(side, parse_topology(cfg.string("topology")));
  RngStream rng(cfg.seed(), 0);
  const Forest f = grow_spacetime(t_from, t_from + 2.0, w, rng);
  const auto raster = rasterize_voronoi(f, t_from, static_cast<int>(cfg.integer("resolution")));
  const CellMap start = init_cells(f, t_from, raster);
  const auto out = reverse_run(start, t_from, t_to, rng);
  write_merge_log_csv(dir + "/merge_log.csv", out.events, meta);
  write_ppm(dir + "/partition_start.ppm", raster);
  write_ppm(dir + "/partition_end.ppm", relabel(raster, out.cells));
  write_profile(dir + "/area_profile_start.csv", start, meta);
  write_profile(dir + "/area_profile_end.csv", out.cells, meta);

  int k = 0;
  for (double s : cfg.numbers("snapshot_times")) {
    if (s > t_from || s < t_to) {
      std::cerr << "snapshot time " << s << " outside [t_to, t_from], skipped\n";
      continue;
    }
    CellMap cells = start;
    for (const auto& e : out.events) {
      if (e.time <= s) break;
      merge_step(cells, e.deleted, e.time);
    }
    const std::string tag = std::to_string(k++);
    write_ppm(dir + "/snapshot_" + tag + ".ppm", relabel(raster, cells));
    write_profile(dir + "/area_profile_snapshot_" + tag + ".csv", cells, meta);
  }
  std::cout << start.live_count() << " cells -> " << out.cells.live_count() << " after "
            << out.events.size() << " merges\n";
  return 0;
}

int cmd_dim(const Config& cfg) {
  const std::string input = cfg.string("input_ppm");
  if (input.empty()) throw std::invalid_argument("--input-ppm is required");
  const std::string dir = prepare_out_dir(cfg);
  const auto meta = meta_of(cfg);
  const auto mask = boundary_mask(read_ppm(input));
  const auto bc = box_count_dimension(mask, static_cast<int>(cfg.integer("scales")));
  CsvWriter w(dir + "/box_counts.csv", meta, {"side", "count", "fitted"});
  for (std::size_t i = 0; i < bc.scales.size(); ++i) {
    const bool fitted = i >= bc.fit_begin && i < bc.fit_end;
    w.row({static_cast<std::int64_t>(bc.scales[i]), bc.counts[i], std::int64_t{fitted}});
  }
  CsvWriter s(dir + "/dimension.csv", meta, {"slope", "r2", "min_r2", "reported"});
  s.row({bc.slope, bc.r2, kBoxCountMinR2, std::int64_t{bc.reported}});
  std::cout << "slope " << bc.slope << " r2 " << bc.r2
            << (bc.reported ? "" : " (below r2 gate, not a dimension estimate)") << "\n";
  return 0;
}

int cmd_verify(const Config& cfg, const std::string& fixture_dir, const std::vector<int>& only) {
  AcceptanceOptions opts;
  opts.seed = cfg.seed();
  opts.fixture_dir = fixture_dir;
  opts.only.insert(only.begin(), only.end());
  int failed = 0;
  const auto results = run_acceptance(opts, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  const std::string report = cfg.string("report");
  if (!report.empty()) {
    json j = json::array();
    for (const auto& r : results) {
      j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                   {"seconds", r.seconds}});
    }
    std::ofstream(report) << json{{"seed", opts.seed}, {"version", std::string(kVersion)},
                                  {"criteria", j}}.dump(2)
                          << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nearest-neighbour coloring simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Overrides color_ov, ea_ov, co_ov, merge_ov, dim_ov, verify_ov;
  auto* color = app.add_subcommand("color", "elementary or space-time coloring");
  add_flags(color, color_ov,
            {"mode", "seeds", "n", "t1", "t2", "resolution", "seed", "out_dir", "topology", "side"});
  auto* ea = app.add_subcommand("ea", "excluded-area chains, chi tail, shot noise");
  add_flags(ea, ea_ov,
            {"steps", "until_t", "replicates", "chi_samples", "level_b", "area_samples", "seed",
             "out_dir"});
  auto* co = app.add_subcommand("coalesce", "coupled excluded-area ensemble");
  add_flags(co, co_ov, {"separation", "t0", "replicates", "max_steps", "seed", "out_dir"});
  auto* merge = app.add_subcommand("merge", "reversed-time partition dynamics");
  add_flags(merge, merge_ov,
            {"t_from", "t_to", "n_init", "snapshot_times", "resolution", "topology", "seed",
             "out_dir"});
  auto* dim = app.add_subcommand("dim", "box-counting dimension of a raster boundary");
  add_flags(dim, dim_ov, {"input_ppm", "scales", "out_dir"});
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_flags(verify, verify_ov, {"seed", "report"});
  std::string fixture_dir = NNCOLOR_FIXTURE_DIR;
  std::vector<int> only;
  verify->add_option("--fixture-dir", fixture_dir);
  verify->add_option("--only", only, "criterion ids to run")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  try {
    if (*color) return cmd_color(resolve(color_ov, color));
    if (*ea) return cmd_ea(resolve(ea_ov, ea));
    if (*co) return cmd_coalesce(resolve(co_ov, co));
    if (*merge) return cmd_merge(resolve(merge_ov, merge));
    if (*dim) return cmd_dim(resolve(dim_ov, dim));
    if (*verify) return cmd_verify(resolve(verify_ov, verify), fixture_dir, only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
