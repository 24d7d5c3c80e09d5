#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "vdw/cli/config.hpp"
#include "vdw/cli/emit.hpp"
#include "vdw/cli/runner.hpp"

using namespace vdw::cli;
using doctest::Approx;

namespace {

std::string error_of(const std::string& text, Mode mode = Mode::single_point) {
  try {
    parse_config(text, mode);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string csv(const RunConfig& cfg, const Table& t) {
  std::ostringstream out;
  write_csv(out, cfg, t);
  return out.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vdw_cli_test_" + name);
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(VDW_SPHERE_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

const std::string kVacuum =
    "schema_version = 1\n"
    "sphere.eps.plasma = 0\n"
    "sphere.mu.plasma = 0\n";

}  // namespace

TEST_CASE("defaults and overrides") {
  const auto cfg = parse_config("schema_version = 1\n# comment\n\nsphere.radius = 2 # inline\n"
                                "geometry.r_a = 2.5\ngeometry.r_b = 3\nquad.transform = exp\n",
                                Mode::single_point);
  CHECK(cfg.sphere.radius == 2.0);
  CHECK(cfg.sphere.eps.plasma == 3.0);
  CHECK(cfg.r_a == 2.5);
  CHECK(cfg.quad.transform == vdw::MapTransform::exponential);
  CHECK(cfg.series.n_cap == 2000);
  CHECK(cfg.theta.start == 0.05);
  CHECK(cfg.resolved.at("mode") == "single-point");
  CHECK(cfg.resolved.at("sphere.radius") == "2");
  CHECK(cfg.atom_a.transitions.size() == 1);

  const auto multi = parse_config("schema_version = 1\natom_a.transitions = 0.8:0.9; 1.7:0.4\n",
                                  Mode::single_point);
  REQUIRE(multi.atom_a.transitions.size() == 2);
  CHECK(multi.atom_a.transitions[1].frequency == 1.7);
}

TEST_CASE("validation errors name the key") {
  CHECK(error_of("sphere.radius = 1\n").find("schema_version") != std::string::npos);
  CHECK(error_of("schema_version = 2\n").find("schema_version") != std::string::npos);
  CHECK(error_of("schema_version = 1\nsphere.radius = -1\n").find("sphere.radius") == 0);
  CHECK(error_of("schema_version = 1\nsphere.radus = 1\n").find("sphere.radus") == 0);
  CHECK(error_of("schema_version = 1\ngeometry.r_a = abc\n").find("geometry.r_a") == 0);
  CHECK(error_of("schema_version = 1\ngeometry.r_a = 0.5\n").find("geometry.r_a") == 0);
  CHECK(error_of("schema_version = 1\nquad.rel_tol = 2\n").find("quad.rel_tol") == 0);
  CHECK(error_of("schema_version = 1\nseries.n_cap = 0\n").find("series.n_cap") == 0);
  CHECK(error_of("schema_version = 1\nsphere.radius = 1\nsphere.radius = 2\n").find("sphere.radius") == 0);
  CHECK(error_of("schema_version = 1\ntheta_scan.count = 0\n", Mode::theta_scan).find("theta_scan.count") == 0);
  CHECK(error_of("schema_version = 1\ntheta_scan.start = 0\n", Mode::theta_scan).find("theta_scan.start") == 0);
  CHECK(error_of("schema_version = 1\nl_scan.spacing = cubic\n", Mode::l_scan).find("l_scan.spacing") == 0);
  CHECK(error_of("schema_version = 1\ncompare.limit = huge\n").find("compare.limit") == 0);
  CHECK(error_of("schema_version = 1\natom_b.transitions = 1.0\n").find("atom_b.transitions") == 0);
  CHECK(error_of("schema_version = 1\njust text\n").find("line 2") == 0);
}

TEST_CASE("ranges") {
  const Range lin{1.0, 2.0, 5, false};
  CHECK(lin.at(0) == 1.0);
  CHECK(lin.at(4) == 2.0);
  CHECK(lin.at(2) == Approx(1.5));
  const Range log{0.01, 10.0, 4, true};
  CHECK(log.at(1) == Approx(0.1));
  CHECK(log.at(3) == Approx(10.0));
  CHECK(Range{3.0, 3.0, 1, false}.at(0) == 3.0);
}

TEST_CASE("vacuum runs") {
  const auto theta = parse_config(kVacuum + "theta_scan.count = 5\n", Mode::theta_scan);
  const auto t = run(theta);
  REQUIRE(t.rows.size() == 5);
  CHECK(t.columns == std::vector<std::string>{"theta", "u0", "ub", "uab", "ratio"});
  for (const auto& row : t.rows) CHECK(row[4] == 1.0);

  const auto lcfg = parse_config(kVacuum + "l_scan.count = 4\n", Mode::l_scan);
  const auto l = run(lcfg);
  CHECK(l.columns[0] == "l");
  for (const auto& row : l.rows) CHECK(row[4] == 1.0);

  const auto cmp = parse_config(kVacuum, Mode::compare_limits);
  const auto c = run(cmp);
  REQUIRE(c.rows.size() == 3);
  for (const auto& row : c.rows) {
    CHECK(row[1] == 0.0);
    CHECK(row[2] == 0.0);
    CHECK(row[3] == 0.0);
  }
  CHECK_FALSE(c.threshold_exceeded);
}

TEST_CASE("output is independent of the thread count") {
  const auto cfg = parse_config("schema_version = 1\ntheta_scan.count = 12\n", Mode::theta_scan);
  const std::string one = csv(cfg, run(cfg, 1));
  CHECK(csv(cfg, run(cfg, 4)) == one);
  CHECK(csv(cfg, run(cfg, 0)) == one);
  CHECK(csv(cfg, run(cfg, 1)) == one);
}

TEST_CASE("csv layout and round trip") {
  const auto cfg = parse_config("schema_version = 1\ntheta_scan.count = 3\n", Mode::theta_scan);
  const auto t = run(cfg);
  const std::string text = csv(cfg, t);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  std::istringstream in(text);
  std::string line;
  std::size_t comments = 0;
  while (std::getline(in, line) && line.rfind("# ", 0) == 0) ++comments;
  CHECK(comments == cfg.resolved.size());
  CHECK(line == "theta,u0,ub,uab,ratio");
  for (const auto& row : t.rows) {
    REQUIRE(std::getline(in, line));
    std::istringstream fields(line);
    std::string cell;
    for (double v : row) {
      REQUIRE(std::getline(fields, cell, ','));
      CHECK(std::strtod(cell.c_str(), nullptr) == v);
    }
  }
}

TEST_CASE("json layout and round trip") {
  const auto cfg = parse_config("schema_version = 1\nl_scan.count = 3\n", Mode::l_scan);
  const auto t = run(cfg);
  std::ostringstream out;
  write_json(out, cfg, t);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["config"]["mode"] == "l-scan");
  CHECK(doc["config"]["l_scan.count"] == "3");
  REQUIRE(doc["rows"].size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      CHECK(doc["rows"][i][t.columns[j]].get<double>() == t.rows[i][j]);
    }
  }
}

TEST_CASE("single point and comparison tables") {
  const auto cfg = parse_config("schema_version = 1\n", Mode::single_point);
  const auto t = run(cfg, 3);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.columns.size() == t.rows[0].size());
  CHECK(t.columns[6] == "u1_rr");
  CHECK(t.rows[0][t.columns.size() - 2] < 0.0);  // u_a

  const auto cmp = parse_config("schema_version = 1\ncompare.threshold = 1e-9\n",
                                Mode::compare_limits);
  const auto c = run(cmp, 2);
  CHECK(c.threshold_exceeded);
  CHECK(std::abs(c.rows[2][3]) < std::abs(c.rows[0][3]));
}

TEST_CASE("command-line exit codes") {
  const auto good = scratch("good.cfg"), bad = scratch("bad.cfg"), out = scratch("out.csv");
  write_file(good, "schema_version = 1\ntheta_scan.count = 3\n");
  write_file(bad, "schema_version = 1\nsphere.radius = 0\n");
  CHECK(run_tool("theta-scan --config " + good.string() + " --out " + out.string()) == 0);
  CHECK(std::filesystem::file_size(out) > 0);
  CHECK(run_tool("theta-scan --config " + good.string() + " --format json --threads 2") == 0);
  CHECK(run_tool("theta-scan --config " + bad.string()) == 2);
  CHECK(run_tool("theta-scan --config " + scratch("missing.cfg").string()) == 2);
  CHECK(run_tool("sideways --config " + good.string()) == 2);
  CHECK(run_tool("theta-scan --config " + good.string() + " --out /nonexistent/dir/x.csv") == 2);

  const auto cap = scratch("cap.cfg");
  write_file(cap, "schema_version = 1\ntheta_scan.r = 1.001\ntheta_scan.count = 2\nseries.n_cap = 5\n");
  CHECK(run_tool("theta-scan --config " + cap.string()) == 3);

  const auto strict = scratch("strict.cfg");
  write_file(strict, "schema_version = 1\ncompare.threshold = 1e-9\n");
  CHECK(run_tool("compare-limits --config " + strict.string()) == 4);
  const auto loose = scratch("loose.cfg");
  write_file(loose, "schema_version = 1\ncompare.threshold = 0.05\n");
  CHECK(run_tool("compare-limits --config " + loose.string()) == 0);
}
