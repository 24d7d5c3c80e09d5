#include "vdw/cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace vdw::cli {

namespace {

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d = {
      {"schema_version", "1"},
      {"sphere.radius", "1"},
      {"sphere.eps.plasma", "3"},
      {"sphere.eps.resonance", "1"},
      {"sphere.eps.damping", "0.001"},
      {"sphere.mu.plasma", "0"},
      {"sphere.mu.resonance", "1"},
      {"sphere.mu.damping", "0.001"},
      {"atom_a.frequency", "1"},
      {"atom_a.alpha0", "1"},
      {"atom_a.transitions", ""},
      {"atom_b.frequency", "1"},
      {"atom_b.alpha0", "1"},
      {"atom_b.transitions", ""},
      {"geometry.r_a", "1.3"},
      {"geometry.r_b", "1.3"},
      {"geometry.theta_a", "0.5"},
      {"geometry.theta_b", "0.5"},
      {"theta_scan.r", "1.03"},
      {"theta_scan.start", "0.05"},
      {"theta_scan.stop", "3.141592653589793"},
      {"theta_scan.count", "32"},
      {"l_scan.r_a", "1.03"},
      {"l_scan.start", "0.01"},
      {"l_scan.stop", "10"},
      {"l_scan.count", "32"},
      {"l_scan.spacing", "log"},
      {"compare.limit", "small-sphere"},
      {"compare.radii", "0.03, 0.01, 0.003"},
      {"compare.delta_a", "0.03"},
      {"compare.delta_b", "0.03"},
      {"compare.x", "0.05"},
      {"compare.threshold", "0.05"},
      {"quad.rel_tol", "1e-8"},
      {"quad.abs_floor", "1e-12"},
      {"quad.max_subdivisions", "200"},
      {"quad.transform", "rational"},
      {"quad.scale", "1"},
      {"series.rel_tol", "1e-10"},
      {"series.n_min_terms", "4"},
      {"series.n_cap", "2000"},
  };
  return d;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  std::string out(s.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& values) : values_(values) {}

  const std::string& text(const std::string& key) const { return values_.at(key); }
  double number(const std::string& key) const { return parse_double(key, text(key)); }
  int integer(const std::string& key) const { return parse_int(key, text(key)); }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
    return v;
  }
  double non_negative(const std::string& key) const {
    const double v = number(key);
    if (!(v >= 0.0)) throw ConfigError(key + ": must be non-negative");
    return v;
  }

 private:
  const std::map<std::string, std::string>& values_;
};

DrudeLorentzModel read_model(const Reader& r, const std::string& prefix) {
  return {r.non_negative(prefix + ".plasma"), r.non_negative(prefix + ".resonance"),
          r.non_negative(prefix + ".damping")};
}

AtomModel read_atom(const Reader& r, const std::string& prefix) {
  const std::string& list = r.text(prefix + ".transitions");
  if (list.empty()) {
    return AtomModel::two_level(r.positive(prefix + ".frequency"), r.positive(prefix + ".alpha0"));
  }
  AtomModel atom;
  const std::string key = prefix + ".transitions";
  for (const auto& item : split(list, ';')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) {
      throw ConfigError(key + ": expected 'frequency:dipole_sq' pairs separated by ';'");
    }
    const double w = parse_double(key, parts[0]), d2 = parse_double(key, parts[1]);
    if (!(w > 0.0) || !(d2 > 0.0)) throw ConfigError(key + ": entries must be positive");
    atom.transitions.push_back({w, d2});
  }
  return atom;
}

Range read_range(const Reader& r, const std::string& prefix, bool logarithmic) {
  Range range{r.number(prefix + ".start"), r.number(prefix + ".stop"),
              r.integer(prefix + ".count"), logarithmic};
  if (range.count < 1) throw ConfigError(prefix + ".count: must be at least 1");
  if (range.count > 1 && !(range.stop > range.start)) {
    throw ConfigError(prefix + ".stop: must exceed " + prefix + ".start");
  }
  if (logarithmic && !(range.start > 0.0)) {
    throw ConfigError(prefix + ".start: must be positive for log spacing");
  }
  return range;
}

void require_outside(const std::string& key, double r, double radius) {
  if (!(r > radius)) throw ConfigError(key + ": atom must lie outside the sphere (r > R)");
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "theta-scan") return Mode::theta_scan;
  if (name == "l-scan") return Mode::l_scan;
  if (name == "single-point") return Mode::single_point;
  if (name == "compare-limits") return Mode::compare_limits;
  return std::nullopt;
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::theta_scan: return "theta-scan";
    case Mode::l_scan: return "l-scan";
    case Mode::single_point: return "single-point";
    case Mode::compare_limits: return "compare-limits";
  }
  return "unknown";
}

double Range::at(int i) const {
  if (count == 1) return start;
  const double f = static_cast<double>(i) / (count - 1);
  if (logarithmic) return start * std::pow(stop / start, f);
  return start + (stop - start) * f;
}

RunConfig parse_config(std::string_view text, Mode mode) {
  std::map<std::string, std::string> values = defaults();
  std::map<std::string, bool> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!values.contains(key)) throw ConfigError(key + ": unknown key");
    if (seen[key]) throw ConfigError(key + ": given more than once");
    seen[key] = true;
    values[key] = value;
  }
  if (!seen["schema_version"]) throw ConfigError("schema_version: required");

  const Reader r(values);
  if (r.integer("schema_version") != kSchemaVersion) {
    throw ConfigError("schema_version: unsupported version " + values["schema_version"]);
  }

  RunConfig cfg;
  cfg.mode = mode;
  cfg.sphere.radius = r.positive("sphere.radius");
  cfg.sphere.eps = read_model(r, "sphere.eps");
  cfg.sphere.mu = read_model(r, "sphere.mu");
  try {
    validate(cfg.sphere);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sphere: ") + e.what());
  }
  cfg.atom_a = read_atom(r, "atom_a");
  cfg.atom_b = read_atom(r, "atom_b");

  cfg.r_a = r.number("geometry.r_a");
  cfg.r_b = r.number("geometry.r_b");
  cfg.theta_a = r.number("geometry.theta_a");
  cfg.theta_b = r.number("geometry.theta_b");
  cfg.scan_r = r.number("theta_scan.r");
  cfg.theta = read_range(r, "theta_scan", false);
  cfg.scan_r_a = r.number("l_scan.r_a");
  const std::string& spacing = values["l_scan.spacing"];
  if (spacing != "log" && spacing != "linear") {
    throw ConfigError("l_scan.spacing: expected 'log' or 'linear'");
  }
  cfg.l = read_range(r, "l_scan", spacing == "log");

  const std::string& limit = values["compare.limit"];
  if (limit == "small-sphere") {
    cfg.limit = LimitKind::small_sphere;
  } else if (limit == "large-sphere-electric") {
    cfg.limit = LimitKind::large_sphere_electric;
  } else if (limit == "large-sphere-magnetic") {
    cfg.limit = LimitKind::large_sphere_magnetic;
  } else {
    throw ConfigError("compare.limit: expected small-sphere, large-sphere-electric or "
                      "large-sphere-magnetic");
  }
  for (const auto& item : split(values["compare.radii"], ',')) {
    const double v = parse_double("compare.radii", item);
    if (!(v > 0.0)) throw ConfigError("compare.radii: radii must be positive");
    cfg.radii.push_back(v);
  }
  if (cfg.radii.empty()) throw ConfigError("compare.radii: at least one radius required");
  cfg.delta_a = r.positive("compare.delta_a");
  cfg.delta_b = r.positive("compare.delta_b");
  cfg.x = r.non_negative("compare.x");
  cfg.threshold = r.positive("compare.threshold");

  cfg.quad.rel_tol = r.number("quad.rel_tol");
  cfg.quad.abs_floor = r.number("quad.abs_floor");
  cfg.quad.max_subdivisions = r.integer("quad.max_subdivisions");
  const std::string& transform = values["quad.transform"];
  if (transform == "rational") {
    cfg.quad.transform = MapTransform::rational;
  } else if (transform == "exp") {
    cfg.quad.transform = MapTransform::exponential;
  } else {
    throw ConfigError("quad.transform: expected 'rational' or 'exp'");
  }
  cfg.quad.scale = r.number("quad.scale");
  cfg.series.rel_tol = r.number("series.rel_tol");
  cfg.series.n_min_terms = r.integer("series.n_min_terms");
  cfg.series.n_cap = r.integer("series.n_cap");
  try {
    validate(cfg.quad);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("quad.") + (e.what() + std::string_view("quadrature: ").size()));
  }
  try {
    validate(cfg.series);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("series.") + (e.what() + std::string_view("series: ").size()));
  }

  const double R = cfg.sphere.radius;
  switch (mode) {
    case Mode::single_point:
      require_outside("geometry.r_a", cfg.r_a, R);
      require_outside("geometry.r_b", cfg.r_b, R);
      break;
    case Mode::theta_scan:
      require_outside("theta_scan.r", cfg.scan_r, R);
      if (!(cfg.theta.start > 0.0) || cfg.theta.stop > std::numbers::pi + 1e-12) {
        throw ConfigError("theta_scan.start: the scan must lie within (0, pi]");
      }
      break;
    case Mode::l_scan:
      require_outside("l_scan.r_a", cfg.scan_r_a, R);
      if (!(cfg.l.start > 0.0)) throw ConfigError("l_scan.start: must be positive");
      break;
    case Mode::compare_limits:
      if (cfg.limit == LimitKind::small_sphere) {
        for (double radius : cfg.radii) {
          require_outside("geometry.r_a", cfg.r_a, radius);
          require_outside("geometry.r_b", cfg.r_b, radius);
        }
      }
      break;
  }

  cfg.resolved = values;
  cfg.resolved["mode"] = to_string(mode);
  return cfg;
}

RunConfig load_config(const std::string& path, Mode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), mode);
}

}  // namespace vdw::cli
