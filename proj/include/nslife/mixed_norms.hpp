#pragma once

#include <utility>
#include <vector>

namespace nslife {

/// Exponents of the weighted mixed-norm bounds for one (d, q, delta).
///   theta1 = dq / (d(q+1) - q(1+delta)),  theta2 = d/(1+delta),
///   theta3 = d/delta, theta4 = d,
///   1 + 1/q = 1/theta5 + 1/d,  1 + 1/q = 1/theta6 + 1/theta7,  1/theta7 = (1+delta)/d.
class ThetaExponents {
 public:
  /// Throws DomainError naming the violated constraint unless q >= d,
  /// 0 < delta < 1 and every theta lies in (1, infinity).
  ThetaExponents(int d, double q, double delta);

  int d() const noexcept { return d_; }
  double q() const noexcept { return q_; }
  double delta() const noexcept { return delta_; }
  double theta(int j) const;  ///< j in 1..7

 private:
  int d_;
  double q_;
  double delta_;
  double th_[7];
};

/// Certified sup bounds on the Kato quantities and ||a||_d.
struct SolutionNormInputs {
  double k_sup = 0.0;        ///< sup_n K_n(T)
  double k_prime_sup = 0.0;  ///< sup_n K'_n(T)
  double a_d_norm = 0.0;
};

enum class PsiLinearTerm {
  young,    ///< K_BL(d; r0, d) M(d, r0) ||a||_d with 1/r0 = 1 + 1/q - 1/d
  literal,  ///< 0.5 M(d, d^2/(d-1)) ||a||_d with K_BL <= 1
};

/// psi(d, q, delta) bounding sup_t t^{(1-d/q)/2} ||u(t)||_q.
double psi_bound(int d, double q, double delta, const SolutionNormInputs& in,
                 PsiLinearTerm linear = PsiLinearTerm::young);

struct GridMin {
  double value = 0.0;
  double argmin = 0.0;
  std::size_t admissible = 0;  ///< grid points that evaluated
};

/// Infimum of psi over the admissible points of a delta grid.
GridMin psi_min(int d, double q, const SolutionNormInputs& in, const std::vector<double>& delta_grid,
                PsiLinearTerm linear = PsiLinearTerm::young);

/// nu(d, q, delta) bounding sup_t t^{1-d/(2q)} ||grad u(t)||_q. Throws
/// InfeasibleExponent unless q < d/delta (first Beta argument positive).
double nu_bound(int d, double q, double delta, const SolutionNormInputs& in);

GridMin nu_min(int d, double q, const SolutionNormInputs& in, const std::vector<double>& delta_grid);

using QProfile = std::vector<std::pair<double, double>>;  ///< (q, value)

/// sup over the common q-grid of norm(q) / psi(q); infinity when psi(q) = 0
/// under a nonzero norm. Throws DomainError if the grids differ.
double grand_lebesgue_norm(const QProfile& psi, const QProfile& norm);

}  // namespace nslife
