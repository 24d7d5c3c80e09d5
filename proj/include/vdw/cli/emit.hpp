#pragma once

#include <ostream>

#include "vdw/cli/config.hpp"
#include "vdw/cli/runner.hpp"

namespace vdw::cli {

enum class Format { csv, json };

/// CSV: the resolved configuration as `# key = value` lines, a header and
/// one row per point, values printed with %.17g.
void write_csv(std::ostream& out, const RunConfig& cfg, const Table& table);

/// JSON object {"config": {...}, "rows": [{column: value, ...}, ...]}.
void write_json(std::ostream& out, const RunConfig& cfg, const Table& table);

void write(std::ostream& out, Format format, const RunConfig& cfg, const Table& table);

}  // namespace vdw::cli
