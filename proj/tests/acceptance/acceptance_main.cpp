#include <cstdlib>
#include <iostream>
#include <string>

#include "nncolor/acceptance.hpp"

// Usage: acceptance [seed] [criterion ...]
int main(int argc, char** argv) {
  nncolor::AcceptanceOptions opts;
  opts.fixture_dir = NNCOLOR_FIXTURE_DIR;
  if (argc > 1) opts.seed = std::stoull(argv[1]);
  for (int i = 2; i < argc; ++i) opts.only.insert(std::stoi(argv[i]));
  std::cout << "acceptance suite, seed " << opts.seed << std::endl;
  int failed = 0;
  nncolor::run_acceptance(opts, [&](const nncolor::CriterionResult& r) {
    std::cout << nncolor::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
