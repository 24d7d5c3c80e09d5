#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/green.hpp"
#include "vdw/materials.hpp"
#include "vdw/quadrature.hpp"

namespace vdw::cli {

inline constexpr int kSchemaVersion = 1;

enum class Mode { theta_scan, l_scan, single_point, compare_limits };

std::optional<Mode> parse_mode(std::string_view name);
std::string to_string(Mode mode);

enum class LimitKind { small_sphere, large_sphere_electric, large_sphere_magnetic };

/// Invalid or inconsistent configuration; the message names the key.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct Range {
  double start{0.0};
  double stop{0.0};
  int count{1};
  bool logarithmic{false};

  /// Grid point i of count, endpoints included.
  double at(int i) const;
};

struct RunConfig {
  Mode mode{Mode::single_point};
  SphereResponse sphere;
  AtomModel atom_a, atom_b;

  // single-point geometry, also the small-sphere comparison geometry
  double r_a{1.3}, r_b{1.3}, theta_a{0.5}, theta_b{0.5};

  double scan_r{1.03};  ///< theta-scan: both atoms at this radius
  Range theta;          ///< theta-scan: Theta = theta_A + theta_B
  double scan_r_a{1.03};  ///< l-scan: inner atom
  Range l;                ///< l-scan: outer atom at r_A + l on the same ray

  LimitKind limit{LimitKind::small_sphere};
  std::vector<double> radii;
  double delta_a{0.03}, delta_b{0.03}, x{0.05};
  double threshold{0.05};

  QuadratureSpec quad;
  SeriesSpec series;

  /// Every recognised key with its resolved value, sorted by key.
  std::map<std::string, std::string> resolved;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, a missing
/// or unsupported schema_version and invalid values raise ConfigError.
RunConfig parse_config(std::string_view text, Mode mode);

/// Reads and parses a file; I/O failures raise ConfigError naming the path.
RunConfig load_config(const std::string& path, Mode mode);

}  // namespace vdw::cli
