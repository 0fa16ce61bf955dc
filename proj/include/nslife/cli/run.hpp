#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>
#include "nslife/cli/config.hpp"

namespace nslife::cli {

inline constexpr int kExitCertified = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

struct RunFlags {
  std::optional<Mode> mode;
  bool verbose = false;
};

struct Report {
  nlohmann::ordered_json json;
  int exit_code = kExitInfeasible;
};

/// Runs the configured certification and assembles the report, fingerprint
/// included. Throws ConfigError or DomainError on input errors.
Report build_report(const ProblemConfig& cfg);

/// Reads the config, writes the report to out_path (stdout if empty) and
/// returns the exit code.
int run(const std::string& config_path, const std::string& out_path, const RunFlags& flags, std::ostream& out,
        std::ostream& err);

int print_constants(int d, double delta, std::ostream& out, std::ostream& err);

/// Re-checks a stored report: replays its certificate from the stored
/// intermediates, recomputes it from the echoed config and compares bytes.
int verify(const std::string& report_path, std::ostream& out, std::ostream& err);

}  // namespace nslife::cli
