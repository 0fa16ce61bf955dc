#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nslife {

/// x_{n+1} <= alpha + beta x_n + gamma x_n^2, x_n >= 0.
struct ScalarRecurrence {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double x0 = 0.0;
};

/// x_{n+1} <= alpha1 + beta1 x_n y_n,  y_{n+1} <= alpha2 + beta2 x_n y_n.
struct CoupledRecurrence {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
};

/// Which hypothesis of a fixed-point lemma failed, and its signed slack
/// (negative: violated by that much).
struct HypothesisFailure {
  std::string condition;
  double slack = 0.0;
};

/// Either a value or the hypothesis that prevented it.
template <class T>
class Checked {
 public:
  Checked(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Checked(HypothesisFailure f) : state_(std::move(f)) {}  // NOLINT

  bool ok() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return ok(); }
  const T& value() const { return std::get<T>(state_); }
  const HypothesisFailure& failure() const { return std::get<HypothesisFailure>(state_); }

 private:
  std::variant<T, HypothesisFailure> state_;
};

/// D(alpha, beta, gamma) = (beta - 1)^2 - 4 alpha gamma.
double discriminant(double alpha, double beta, double gamma);
/// Larger root Z = (1 - beta + sqrt(D)) / (2 gamma); NaN when D < 0.
double upper_root(double alpha, double beta, double gamma);
/// Smaller root (1 - beta - sqrt(D)) / (2 gamma); NaN when D < 0.
double lower_root(double alpha, double beta, double gamma);

/// Returns Z with sup_n x_n <= Z for every sequence obeying the scalar
/// recurrence, provided D > 0, Z > 0 and x0 < Z. Throws DomainError for
/// gamma <= 0.
Checked<double> fixed_point_bound(const ScalarRecurrence& rec);

struct CoupledBound {
  double x_bound = 0.0;  ///< Z(alpha1, Det1, beta2)
  double y_bound = 0.0;  ///< Z(alpha2, Det2, beta1)
  double det1 = 0.0;     ///< alpha2 beta1 - alpha1 beta2
  /// D(alpha1, Det1, beta2) = (Det1 - 1)^2 - 4 alpha1 beta2, the
  /// discriminant under the square root of Z(alpha1, Det1, beta2).
  double d1 = 0.0;
  double d2 = 0.0;
  /// (Det1 + 1)^2 - 4 alpha1 beta2 and its mirror; checked as extra
  /// hypotheses. They coincide with d1, d2 when Det1 = 0.
  double d1_plus = 0.0;
  double d2_plus = 0.0;
};

/// Componentwise sup bounds for the coupled recurrence. The pair
/// (x_bound, y_bound) is the upper fixed point of the extremal map.
/// Throws DomainError for non-positive alpha or beta.
Checked<CoupledBound> coupled_bound(const CoupledRecurrence& rec);

/// Extremal trajectory of the equality dynamics.
struct Trajectory {
  std::vector<double> x;
  double sup = 0.0;
  bool diverged = false;
  std::size_t steps = 0;  ///< iterations actually performed
};

struct CoupledTrajectory {
  std::vector<double> x;
  std::vector<double> y;
  double sup_x = 0.0;
  double sup_y = 0.0;
  bool diverged = false;
  std::size_t steps = 0;
};

/// Values above this are reported as divergence.
inline constexpr double kDivergenceCeiling = 1e100;

/// Iterates x_{n+1} = alpha + beta x_n + gamma x_n^2 (gamma = 0 allowed).
Trajectory iterate_worst_case(const ScalarRecurrence& rec, std::size_t n_steps);
/// Iterates the coupled equalities.
CoupledTrajectory iterate_worst_case(const CoupledRecurrence& rec, std::size_t n_steps);

}  // namespace nslife
