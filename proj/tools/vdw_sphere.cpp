#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vdw/cli/config.hpp"
#include "vdw/cli/emit.hpp"
#include "vdw/cli/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitThreshold = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Van der Waals potential of two atoms near a sphere"};
  std::string mode_name, config_path, out_path, format_name = "csv";
  unsigned threads = 1;
  app.add_option("mode", mode_name, "theta-scan | l-scan | single-point | compare-limits")
      ->required()
      ->check(CLI::IsMember({"theta-scan", "l-scan", "single-point", "compare-limits"}));
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format_name, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads, 0 for all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const auto cfg = vdw::cli::load_config(config_path, *vdw::cli::parse_mode(mode_name));
    const auto format = format_name == "json" ? vdw::cli::Format::json : vdw::cli::Format::csv;
    const auto table = vdw::cli::run(cfg, threads);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';

    if (out_path.empty()) {
      vdw::cli::write(std::cout, format, cfg, table);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitInvalid;
      }
      vdw::cli::write(out, format, cfg, table);
      if (!out) {
        std::cerr << "error: failed writing '" << out_path << "'\n";
        return kExitInvalid;
      }
    }
    if (table.threshold_exceeded) {
      std::cerr << "error: relative deviation exceeds compare.threshold\n";
      return kExitThreshold;
    }
    return kExitOk;
  } catch (const vdw::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const vdw::OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const vdw::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
