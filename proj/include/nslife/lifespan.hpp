#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nslife/constants.hpp"
#include "nslife/initial_data.hpp"

namespace nslife {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Nondecreasing T -> value map with a declared large-T behaviour.
struct MonotoneEvaluator {
  std::function<double(double)> eval;  ///< T in (0, infinity]
  bool finite_limit = false;           ///< eval(infinity) is finite and meaningful
  std::string description;

  double operator()(double T) const { return eval(T); }
};

/// Inputs shared by the lifespan theorems for one (d, delta).
struct KatoBoundState {
  int d = 3;
  double delta = kDelta0;
  MonotoneEvaluator k0;        ///< K0(T)
  MonotoneEvaluator k0_prime;  ///< K0'(T)
  ConstantSet constants;
};

/// Exact evaluators of the heat-evolved vortex.
KatoBoundState exact_state(const VortexGaussian& a, double delta);

/// Evaluators built from a NormBundle: K0(T) is the smallest valid bound
/// among the (theta-norm, Young, S1 ||a||_d) forms; K0'(T) the smaller of
/// sqrt(T) ||grad a||_d and S2 ||a||_d. Throws UnavailableBound if either
/// side has no bound at all.
KatoBoundState norm_state(const NormBundle& norms, int d, double delta,
                          std::optional<double> theta = std::nullopt);

struct SearchOptions {
  double t_min = 1e-12;
  double t_max = 1e12;
  int scan_points = 64;
  int max_iter = 60;
  double rel_tol = 1e-10;
  double margin = 1e-9;  ///< absolute slack for strict inequalities
};

struct Feasibility {
  bool ok = false;
  double margin = 0.0;  ///< signed slack of the tightest inequality
  std::string failed;   ///< empty when ok
};

using FeasibilityOracle = std::function<Feasibility(double T)>;

struct SearchResult {
  double t0 = 0.0;          ///< largest certified T, or infinity
  bool range_end = false;   ///< feasible at t_max, infinite branch not available
  bool below_range = false; ///< first feasible T found below t_min
  bool non_monotone = false;
  int iterations = 0;
  double first_infeasible = kInfinity;  ///< bracket end above t0
  std::string failure;                  ///< reason at first_infeasible or at t_min
};

/// Largest feasible prefix on a log scan followed by log bisection. The
/// infinite branch is tried first when try_infinity is set.
SearchResult largest_feasible(const FeasibilityOracle& oracle, bool try_infinity, const SearchOptions& opt = {});

struct LifespanCertificate {
  double t0 = 0.0;          ///< kInfinity for global existence
  std::string theorem;      ///< thm31, thm41, thm41-explicit, global
  int d = 3;
  double delta_used = 0.0;
  bool certified = false;   ///< t0 > 0 with all inequalities holding
  double iterate_bound = 0.0;
  double threshold = 0.0;
  std::map<std::string, double> intermediate;
  std::vector<std::string> notes;
  std::string failure;
  bool non_monotone = false;
  std::vector<std::pair<double, double>> delta_profile;  ///< (delta, t0)
};

/// Coupled-system certification: largest T with K0(T) < Z(K0, s1, J2) and
/// K0'(T) < Z(K0', s2, J1), s1 = J1 K0'(T) - J2 K0(T), s2 = -s1.
LifespanCertificate theorem31_bound(const KatoBoundState& state, const SearchOptions& opt = {});

/// Single-threshold certification: largest T with
/// max(K0(T), K0'(T)) <= 3/(16 J(d, delta)); iterate bound 3/(4 J).
LifespanCertificate theorem41_bound(const KatoBoundState& state, const SearchOptions& opt = {});

/// Closed-form inversion of the norm bounds against the threshold.
LifespanCertificate theorem41_explicit(const NormBundle& norms, int d, double delta,
                                       std::optional<double> theta = std::nullopt);

/// 64-point grid: 16 log-spaced in [0.005, 0.1), 48 linear in [0.1, 0.95].
std::vector<double> default_delta_grid(std::size_t n = 64);

/// Best certificate over the grid; ties go to the smaller delta.
LifespanCertificate optimize_delta(const std::function<LifespanCertificate(double)>& certifier,
                                   const std::vector<double>& grid);

/// eps = 3/(16 J(d, delta)) / max(S1, S2): ||a||_d <= eps gives global existence.
double global_smallness_threshold(int d, double delta, const ConstantSet& constants);

/// Global-existence test from ||a||_d alone.
LifespanCertificate global_certificate(double norm_d, int d, double delta);

struct ReplayCheck {
  std::string name;
  double margin = 0.0;
  bool pass = false;
};

/// Re-evaluates the producing inequalities from the stored intermediates
/// with freshly computed constants.
std::vector<ReplayCheck> replay(const LifespanCertificate& cert);

}  // namespace nslife
