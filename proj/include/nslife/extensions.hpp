#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nslife/lifespan.hpp"

namespace nslife {

/// |||f|||_{theta,lambda} = sup_{s>0} ||f(., s)||_theta / s^lambda.
struct ForceNorm {
  double theta = 1.0;
  double lambda = -0.5;  ///< in (-1, 0)
  double value = 0.0;
};

/// Time-kernel exponent over (t-s) in the K0 force integral.
enum class ForceKernel {
  heat,     ///< -d(1-1/r1)/2, the heat-kernel decay
  literal,  ///< -d(1-1/r1)
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> violated;  ///< named constraints
  std::vector<std::string> notes;
};

struct ForceContribution {
  double coefficient = 0.0;  ///< additive, T independent
  double r = 0.0;            ///< kernel exponent r1 or r2
  double lambda_required = 0.0;
  double weight_exponent = 0.0;  ///< residual power of t; 0 when the weights match
  FeasibilityReport feasibility;
};

/// lambda making the weighted force integral T independent.
double matched_lambda_k0(int d, double delta, double theta, ForceKernel kernel = ForceKernel::heat);
double matched_lambda_k0_prime(int d, double theta);

/// Contribution K_BL(d; r1, theta1) M(d, r1) |||f|||_{theta1,lambda1} B(.,.) to K0,
/// 1 + delta/d = 1/r1 + 1/theta1. Constraint violations are reported, not thrown.
ForceContribution force_contribution_k0(int d, double delta, const ForceNorm& f1,
                                        ForceKernel kernel = ForceKernel::heat);

/// Contribution K_BL(d; r2, theta2) M'(d, r2) |||f|||_{theta2,lambda2}
/// B(1/2 - d(1-1/r2)/2, lambda2 + 1) to K0', 1 + 1/d = 1/r2 + 1/theta2.
ForceContribution force_contribution_k0_prime(int d, const ForceNorm& f2);

/// theorem41_bound with K0 and K0' shifted by the force contributions.
/// Throws InfeasibleExponent when either contribution is infeasible.
LifespanCertificate forced_lifespan(const KatoBoundState& state, const ForceNorm& f1, const ForceNorm& f2,
                                    ForceKernel kernel = ForceKernel::heat, const SearchOptions& opt = {});

struct AbstractParabolicProblem {
  double gamma = 0.5;    ///< semigroup smoothing exponent in (0, 1)
  double c_gamma = 1.0;  ///< ||e^{At}||(Y -> X) <= C(gamma) t^{-gamma}
  double alpha = 1.0;    ///< ball radius
  double k1 = 1.0;       ///< sup of ||Phi|| on the ball
  double k2 = 1.0;       ///< Lipschitz constant on the ball
  double t1 = 1.0;       ///< user horizon
  double t2 = 1.0;       ///< continuity time of the free evolution
};

struct AbstractParabolicResult {
  double t = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;
  std::string limiting;       ///< "T1".."T4"
  double ball_term = 0.0;     ///< K1 C T^{1-gamma}/(1-gamma), must be < alpha/2
  double contraction = 0.0;   ///< K2 C T^{1-gamma}/(1-gamma), must be <= 1/2
  double margin = 0.01;
};

/// T = min(T1, T2, T3, T4) with T3, T4 the closed-form horizons shrunk by
/// `margin` (relative) below equality.
AbstractParabolicResult abstract_parabolic_lifespan(const AbstractParabolicProblem& p, double margin = 0.01);

}  // namespace nslife
