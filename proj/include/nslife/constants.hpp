#pragma once

#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace nslife {

/// Exponent pair (p, q) of a convolution inequality, with conjugates
/// s = p/(p-1), t = q/(q-1) and the output exponent 1/r = 1/p + 1/q - 1.
/// Exponents equal to 1 are accepted as limits (conjugate = infinity).
class ExponentPair {
 public:
  ExponentPair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double inv_p() const noexcept { return 1.0 / p_; }
  double inv_q() const noexcept { return 1.0 / q_; }
  /// 1/r; may fall outside [0, 1], which young_constant rejects.
  double inv_r() const noexcept { return 1.0 / p_ + 1.0 / q_ - 1.0; }

 private:
  double p_;
  double q_;
};

/// Optimal constant of the Sobolev embedding ||f||_{dp/(d-p)} <= K ||grad f||_p,
/// 1 <= p < d (Bliss/Talenti). At p = 1 the factor ((p-1)/(d-p))^{(p-1)/p}
/// is taken as its limit 1.
double sobolev_constant(int d, double p);

/// Norm of a Riesz transform on L_p (Pichorides constant), p > 1.
double riesz_constant(double p);

/// Sharp Young convolution constant on R^d (Beckner, Brascamp-Lieb):
///   [ p^{1/p} s^{-1/s} q^{1/q} t^{-1/t} z^{1/z} r^{-1/r} ]^{d/2},
/// with z = r/(r-1). Always <= 1. The limits r = infinity and p or q = 1
/// are evaluated analytically.
double young_constant(int d, const ExponentPair& pq);
double young_constant(int d, double p, double q);

/// M(d, r) = 2^{d/r} pi^{-d(1-1/r)/2} r^{-d/(2r)}, so that
/// ||w_t||_r <= t^{-d(1-1/r)/2} M(d, r). Note M(d, 1) = 2^d while the heat
/// kernel itself has unit mass; M overestimates ||w_1||_r by exactly 2^d.
double heat_kernel_norm(int d, double r);

/// M'(d, r) = M(d, d + r) / 2, the gradient counterpart of M.
double heat_kernel_grad_norm(int d, double r);

inline constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi;

/// 2 sqrt(pi) / (9 + 2 sqrt(pi)): the crossing point of J^(1) and J^(2).
inline constexpr double kDelta0 = 2.0 * kSqrtPi / (9.0 + 2.0 * kSqrtPi);

/// Printed reference values kept for comparison in reports.
inline constexpr double kPrintedC1 = 56.35566683;
inline constexpr double kPrintedC2 = 0.0033270;
inline constexpr double kPrintedC3 = 0.0133308333;
inline constexpr double kPrintedC3OverD2AtD3 = 0.0014767;

/// Upper bounds J^(1), J^(2) for the bilinear-term constants.
double j_upper1(int d, double delta);
double j_upper2(int d, double delta);
/// J(d, delta) = max(J^(1), J^(2)).
double j_combined(int d, double delta);

/// Every closed-form constant for one (d, delta).
struct ConstantSet {
  int d = 0;
  double delta = 0.0;

  std::map<double, double> ks;       ///< p -> K_S(d, p)
  std::map<double, double> kr;       ///< p -> K_R(p)
  std::map<double, double> m;        ///< r -> M(d, r)
  std::map<double, double> m_prime;  ///< r -> M'(d, r)

  double r_s1 = 0.0;    ///< kernel exponent d / (d - 1 + delta) of S1
  double s1 = 0.0;      ///< K_BL(d; d, r_s1) M(d, r_s1)
  double s2 = 0.0;      ///< K_BL(d; 1, d) M(d, 1) / 2
  double s2_alt = 0.0;  ///< K_BL(d; 1, d) M(d, d^2/(d-1)) / 2
  double j1 = 0.0;      ///< K_R(d/delta) K_R(d) sqrt(pi) Gamma(delta/2) / Gamma((1+delta)/2)
  double j2 = 0.0;      ///< K_R(d)^2 Gamma((1-delta)/2) Gamma(delta/2) / sqrt(pi)
  double j_up1 = 0.0;
  double j_up2 = 0.0;
  double j = 0.0;
  double delta0 = 0.0;
  double j_bar = 0.0;  ///< 9 d^2 / (2 delta0^2) = J(d, delta0)
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  std::vector<std::string> notes;

  /// Smallness threshold 3/(16 J(d, delta)) on max(K0, K0'); equals
  /// C2/d^2 at delta = delta0.
  double threshold() const noexcept { return 3.0 / (16.0 * j); }
  /// Resulting sup bound 3/(4 J(d, delta)) on the Picard iterates.
  double iterate_bound() const noexcept { return 3.0 / (4.0 * j); }
};

/// Evaluates the full ConstantSet. Requires d >= 3 and 0 < delta < 1.
ConstantSet composite_constants(int d, double delta);

/// Memo of composite_constants keyed by (d, delta). Owned by the caller;
/// lookups are thread safe.
class ConstantCache {
 public:
  const ConstantSet& get(int d, double delta);

 private:
  std::mutex mutex_;
  std::map<std::pair<int, double>, ConstantSet> cache_;
};

}  // namespace nslife
