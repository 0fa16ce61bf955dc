#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>
#include "nslife/extensions.hpp"
#include "nslife/initial_data.hpp"
#include "nslife/lifespan.hpp"
#include "nslife/mixed_norms.hpp"

namespace nslife::cli {

/// Malformed or incomplete configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { thm31, thm41, thm41_explicit, global_test, mixed_norms, forced, abstract_parabolic };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct VortexSpec {
  double sigma = 1.0;
  double amplitude = 1.0;
};

struct ForceSpec {
  ForceNorm f1;
  ForceNorm f2;
  bool lambda1_matched = false;  ///< lambda omitted: use the weight-matching value
  bool lambda2_matched = false;
  ForceKernel kernel = ForceKernel::heat;

  /// f1, f2 with matched lambdas filled in for this (d, delta).
  std::pair<ForceNorm, ForceNorm> resolve(int d, double delta) const;
};

struct ProblemConfig {
  int d = 3;
  std::optional<double> delta;
  std::vector<double> delta_grid;  ///< used when delta is absent
  Mode mode = Mode::thm41;
  std::optional<VortexSpec> vortex;
  std::optional<NormBundle> norms;
  std::optional<double> theta;
  std::vector<double> q_grid;
  std::optional<ForceSpec> force;
  std::optional<AbstractParabolicProblem> abstract_parabolic;
  double parabolic_margin = 0.01;
  SearchOptions search;
  PsiLinearTerm psi_linear = PsiLinearTerm::young;
};

/// Parses and validates. Errors name the offending field or the line of a
/// syntax error.
ProblemConfig parse_config(const std::string& text, std::optional<Mode> mode_override = std::nullopt);
ProblemConfig load_config(const std::string& path, std::optional<Mode> mode_override = std::nullopt);

/// Canonical JSON form; parse_config(to_json(c).dump()) reproduces c.
nlohmann::ordered_json to_json(const ProblemConfig& c);

nlohmann::ordered_json to_json(const NormBundle& nb);
NormBundle norm_bundle_from_json(const nlohmann::ordered_json& j, const std::string& where = "norms");

/// Doubles as JSON: non-finite values become "infinity", "-infinity", "nan".
nlohmann::ordered_json number(double v);
double number_from_json(const nlohmann::ordered_json& j, const std::string& where);

}  // namespace nslife::cli
