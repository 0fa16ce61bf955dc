#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include "nslife/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certified lifespan bounds for mild Navier-Stokes solutions"};
  std::string config;
  std::string out;
  std::string mode;
  std::string verify_path;
  std::vector<double> pc;
  bool verbose = false;
  app.add_option("--config", config, "problem description (JSON)");
  app.add_option("--out", out, "report path; stdout when omitted");
  app.add_option("--mode", mode, "override the mode field of the config");
  app.add_option("--print-constants", pc, "print the constant table for d delta")->expected(2);
  app.add_option("--verify", verify_path, "replay and recompute a stored report");
  app.add_flag("--verbose,-v", verbose, "print constants and notes to stderr");
  app.set_version_flag("--version", NSLIFE_VERSION);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : nslife::cli::kExitInputError;
  }

  if (!pc.empty()) {
    const double d = pc[0];
    if (d != static_cast<int>(d)) {
      std::cerr << "error: --print-constants: d must be an integer\n";
      return nslife::cli::kExitInputError;
    }
    return nslife::cli::print_constants(static_cast<int>(d), pc[1], std::cout, std::cerr);
  }
  if (!verify_path.empty()) return nslife::cli::verify(verify_path, std::cout, std::cerr);
  if (config.empty()) {
    std::cerr << "error: --config is required (or --print-constants / --verify)\n";
    return nslife::cli::kExitInputError;
  }
  nslife::cli::RunFlags flags;
  flags.verbose = verbose;
  if (!mode.empty()) {
    try {
      flags.mode = nslife::cli::mode_from_string(mode);
    } catch (const nslife::cli::ConfigError& e) {
      std::cerr << "error: --mode: " << e.what() << "\n";
      return nslife::cli::kExitInputError;
    }
  }
  return nslife::cli::run(config, out, flags, std::cout, std::cerr);
}
