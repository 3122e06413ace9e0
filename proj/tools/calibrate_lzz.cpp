// Records c0 for the two-point bound: the peak density of D2 - D1 at intensity 1.
#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nncolor/config.hpp"
#include "nncolor/coupled_ea.hpp"
#include "nncolor/rng.hpp"

int main(int argc, char** argv) {
  CLI::App app{"calibrate c0 for the two-point nearest-neighbour bound"};
  std::uint64_t seed = 1;
  std::size_t trials = 1000000;
  double bin_width = 0.01;
  std::string out = "lzz_c0.json";
  app.add_option("--seed", seed);
  app.add_option("--trials", trials);
  app.add_option("--bin-width", bin_width);
  app.add_option("--out", out);
  CLI11_PARSE(app, argc, argv);

  nncolor::RngStream rng(seed, 0);
  const auto g = nncolor::gap_density(1.0, trials, bin_width, 4.0, rng);
  // Binomial noise on the peak bin, so the recorded value can carry a margin.
  const double peak_se = std::sqrt(g.max_density / (trials * bin_width));
  nlohmann::json j = {{"c0", g.max_density},
                      {"c0_std_error", peak_se},
                      {"lambda", 1.0},
                      {"trials", trials},
                      {"bin_width", bin_width},
                      {"seed", seed},
                      {"mean_gap", g.mean_gap},
                      {"version", std::string(nncolor::kVersion)}};
  std::ofstream(out) << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return 0;
}
