#pragma once

// Named verification suites, each producing a report.

#include "nccell/linalg.hpp"
#include "nccell/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nccell::suites {

struct Options {
  int trials = 20;
  linalg::Index dim = 6;
  std::optional<double> tol;  // overrides the suite's main tolerance
  int grid = 512;
  std::uint64_t seed = 0;
};

/// ideal-identities, homotopy-null, homotopy-lambda-rho, unitization-iso,
/// index-cell, exp-cell, cone-cell, exactness-reconstruction, stability.
const std::vector<std::string>& suite_names();

/// Any suite name, or "all" for every suite in one report. Throws
/// std::invalid_argument for an unknown name.
report::Report run_suite(std::string_view name, const Options& opts);

}  // namespace nccell::suites
