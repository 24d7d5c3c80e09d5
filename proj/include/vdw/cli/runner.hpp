#pragma once

#include <string>
#include <vector>

#include "vdw/cli/config.hpp"

namespace vdw::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> warnings;
  bool threshold_exceeded{false};  ///< compare-limits only
};

/// Evaluates every row of the mode on `threads` workers (0 picks the
/// hardware concurrency). Row order and values do not depend on the thread
/// count; the first failing row, by index, is rethrown.
Table run(const RunConfig& cfg, unsigned threads = 1);

}  // namespace vdw::cli
