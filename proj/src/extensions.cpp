#include "nslife/extensions.hpp"

#include <cmath>
#include <sstream>

#include "nslife/constants.hpp"
#include "nslife/errors.hpp"
#include "nslife/special_functions.hpp"

namespace nslife {
namespace {

constexpr double kLambdaTol = 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require(FeasibilityReport& rep, bool ok, const std::string& name) {
  if (!ok) {
    rep.feasible = false;
    rep.violated.push_back(name);
  }
}

void check_force(const ForceNorm& f, const char* fn) {
  if (!(f.value >= 0.0) || !std::isfinite(f.value)) {
    throw DomainError(std::string(fn) + ": force norm must be finite and >= 0");
  }
  if (!(f.theta >= 1.0) || !std::isfinite(f.theta)) {
    throw DomainError(std::string(fn) + ": force exponent theta must be finite and >= 1");
  }
}

}  // namespace

double matched_lambda_k0(int d, double delta, double theta, ForceKernel kernel) {
  const double c = d / theta - delta;  // d(1 - 1/r1)
  return kernel == ForceKernel::heat ? 0.5 * c - 1.0 - 0.5 * (1.0 - delta) : c - 1.0 - 0.5 * (1.0 - delta);
}

double matched_lambda_k0_prime(int d, double theta) {
  const double c = d / theta - 1.0;  // d(1 - 1/r2)
  return 0.5 * c - 1.0;
}

ForceContribution force_contribution_k0(int d, double delta, const ForceNorm& f1, ForceKernel kernel) {
  if (d < 3) throw DomainError("force_contribution_k0: dimension must be >= 3");
  if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("force_contribution_k0: delta must lie in (0, 1)");
  check_force(f1, "force_contribution_k0");
  ForceContribution out;
  FeasibilityReport& rep = out.feasibility;
  const double dd = d;
  const double inv_r = 1.0 + delta / dd - 1.0 / f1.theta;
  const double c = dd * (1.0 - inv_r);
  out.r = 1.0 / inv_r;
  out.lambda_required = matched_lambda_k0(d, delta, f1.theta, kernel);
  require(rep, inv_r < 1.0, "r1 > 1 (theta1 < d/delta)");
  require(rep, c < 2.0, "d(1-1/r1) < 2");
  const double beta_a = kernel == ForceKernel::heat ? 1.0 - 0.5 * c : 1.0 - c;
  if (kernel == ForceKernel::heat) {
    require(rep, beta_a > 0.0, "1 - d(1-1/r1)/2 > 0");
    const double k = 0.5 * c;
    out.weight_exponent = 0.5 * (1.0 - delta) + 1.0 - k + f1.lambda;
  } else {
    require(rep, beta_a > 0.0, "d(1-1/r1) < 1");
    rep.notes.push_back("kernel (t-s)^(-d(1-1/r1)) needs d(1-1/r1) < 1, stricter than d(1-1/r1) < 2");
    out.weight_exponent = 0.5 * (1.0 - delta) + 1.0 - c + f1.lambda;
  }
  require(rep, f1.lambda > -1.0 && f1.lambda < 0.0, "lambda1 in (-1, 0)");
  require(rep, out.lambda_required > -1.0 && out.lambda_required < 0.0, "matched lambda1 in (-1, 0)");
  require(rep, std::abs(f1.lambda - out.lambda_required) <= kLambdaTol,
          "lambda1 = " + num(out.lambda_required) + " so the weight t^((1-delta)/2) cancels");
  if (!rep.feasible || f1.value == 0.0) return out;
  out.coefficient = young_constant(d, out.r, f1.theta) * heat_kernel_norm(d, out.r) * f1.value *
                    beta_fn(beta_a, 1.0 + f1.lambda);
  return out;
}

ForceContribution force_contribution_k0_prime(int d, const ForceNorm& f2) {
  if (d < 3) throw DomainError("force_contribution_k0_prime: dimension must be >= 3");
  check_force(f2, "force_contribution_k0_prime");
  ForceContribution out;
  FeasibilityReport& rep = out.feasibility;
  const double dd = d;
  const double inv_r = 1.0 + 1.0 / dd - 1.0 / f2.theta;
  const double c = dd * (1.0 - inv_r);
  out.r = 1.0 / inv_r;
  out.lambda_required = matched_lambda_k0_prime(d, f2.theta);
  out.weight_exponent = 1.0 - 0.5 * c + f2.lambda;
  require(rep, inv_r < 1.0, "r2 > 1 (theta2 < d)");
  require(rep, c < 1.0, "d(1-1/r2) < 1");
  require(rep, f2.lambda > -1.0 && f2.lambda < 0.0, "lambda2 in (-1, 0)");
  require(rep, std::abs(f2.lambda - out.lambda_required) <= kLambdaTol,
          "lambda2 = " + num(out.lambda_required) + " so the weight t^(1/2) cancels");
  if (!rep.feasible || f2.value == 0.0) return out;
  out.coefficient = young_constant(d, out.r, f2.theta) * heat_kernel_grad_norm(d, out.r) * f2.value *
                    beta_fn(0.5 - 0.5 * c, 1.0 + f2.lambda);
  return out;
}

LifespanCertificate forced_lifespan(const KatoBoundState& state, const ForceNorm& f1, const ForceNorm& f2,
                                    ForceKernel kernel, const SearchOptions& opt) {
  const ForceContribution c1 = force_contribution_k0(state.d, state.delta, f1, kernel);
  const ForceContribution c2 = force_contribution_k0_prime(state.d, f2);
  if (!c1.feasibility.feasible || !c2.feasibility.feasible) {
    std::string names;
    for (const auto& v : c1.feasibility.violated) names += (names.empty() ? "" : "; ") + v;
    for (const auto& v : c2.feasibility.violated) names += (names.empty() ? "" : "; ") + v;
    throw InfeasibleExponent(names, "forced_lifespan: infeasible force exponents: " + names);
  }
  KatoBoundState forced = state;
  const double a1 = c1.coefficient;
  const double a2 = c2.coefficient;
  forced.k0.eval = [inner = state.k0.eval, a1](double T) { return inner(T) + a1; };
  forced.k0_prime.eval = [inner = state.k0_prime.eval, a2](double T) { return inner(T) + a2; };
  LifespanCertificate cert = theorem41_bound(forced, opt);
  cert.intermediate["force_k0"] = a1;
  cert.intermediate["force_k0_prime"] = a2;
  cert.notes.push_back("forced variant: K0 += " + num(a1) + ", K0' += " + num(a2) +
                       " (T-independent force contributions)");
  if (kernel == ForceKernel::literal) {
    cert.notes.push_back("K0 force term uses the (t-s)^(-d(1-1/r1)) kernel");
  }
  for (const auto& n : c1.feasibility.notes) cert.notes.push_back(n);
  return cert;
}

AbstractParabolicResult abstract_parabolic_lifespan(const AbstractParabolicProblem& p, double margin) {
  if (!(p.gamma > 0.0) || !(p.gamma < 1.0)) throw DomainError("abstract_parabolic: gamma must lie in (0, 1)");
  if (!(p.c_gamma > 0.0) || !(p.alpha > 0.0) || !(p.k1 > 0.0) || !(p.k2 > 0.0) || !(p.t1 > 0.0) ||
      !(p.t2 > 0.0)) {
    throw DomainError("abstract_parabolic: C(gamma), alpha, K1, K2, T1, T2 must be > 0");
  }
  if (!(margin > 0.0) || !(margin < 1.0)) throw DomainError("abstract_parabolic: margin must lie in (0, 1)");
  const double g1 = 1.0 - p.gamma;
  AbstractParabolicResult r;
  r.margin = margin;
  r.t3 = (1.0 - margin) * std::pow(p.alpha * g1 / (2.0 * p.k1 * p.c_gamma), 1.0 / g1);
  r.t4 = (1.0 - margin) * std::pow(g1 / (2.0 * p.k2 * p.c_gamma), 1.0 / g1);
  r.t = p.t1;
  r.limiting = "T1";
  if (p.t2 < r.t) {
    r.t = p.t2;
    r.limiting = "T2";
  }
  if (r.t3 < r.t) {
    r.t = r.t3;
    r.limiting = "T3";
  }
  if (r.t4 < r.t) {
    r.t = r.t4;
    r.limiting = "T4";
  }
  const double w = p.c_gamma * std::pow(r.t, g1) / g1;
  r.ball_term = p.k1 * w;
  r.contraction = p.k2 * w;
  return r;
}

}  // namespace nslife
