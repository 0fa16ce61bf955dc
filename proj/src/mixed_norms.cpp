#include "nslife/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nslife/constants.hpp"
#include "nslife/errors.hpp"
#include "nslife/special_functions.hpp"

namespace nslife {

ThetaExponents::ThetaExponents(int d, double q, double delta) : d_(d), q_(q), delta_(delta) {
  if (d < 3) throw DomainError("ThetaExponents: dimension must be >= 3");
  if (!(q >= d) || !std::isfinite(q)) throw DomainError("ThetaExponents: need finite q >= d");
  if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("ThetaExponents: delta must lie in (0, 1)");
  const double dd = d;
  th_[0] = dd * q / (dd * (q + 1.0) - q * (delta + 1.0));
  th_[1] = dd / (1.0 + delta);
  th_[2] = dd / delta;
  th_[3] = dd;
  th_[4] = 1.0 / (1.0 + 1.0 / q - 1.0 / dd);
  th_[6] = dd / (1.0 + delta);
  th_[5] = 1.0 / (1.0 + 1.0 / q - 1.0 / th_[6]);
  for (int j = 0; j < 4; ++j) {
    if (!(th_[j] > 1.0) || !std::isfinite(th_[j])) {
      throw DomainError("ThetaExponents: 1 < theta" + std::to_string(j + 1) + " < infinity violated");
    }
  }
  // theta5 = 1 exactly at q = d; the convolution pairing (1, d) is still valid.
  for (int j = 4; j < 7; ++j) {
    if (!(th_[j] >= 1.0) || !std::isfinite(th_[j])) {
      throw DomainError("ThetaExponents: 1 <= theta" + std::to_string(j + 1) + " < infinity violated");
    }
  }
}

double ThetaExponents::theta(int j) const {
  if (j < 1 || j > 7) throw DomainError("ThetaExponents::theta: index must be 1..7");
  return th_[j - 1];
}

namespace {

void check_inputs(const SolutionNormInputs& in) {
  if (!(in.k_sup >= 0.0) || !(in.k_prime_sup >= 0.0) || !(in.a_d_norm >= 0.0)) {
    throw DomainError("mixed norms: inputs must be nonnegative");
  }
}

template <class F>
GridMin grid_min(const std::vector<double>& grid, const F& f) {
  if (grid.empty()) throw DomainError("grid infimum: empty delta grid");
  const std::size_t n = grid.size();
  std::vector<double> vals(n, std::numeric_limits<double>::quiet_NaN());
  const long ln = static_cast<long>(n);
#if defined(NSLIFE_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < ln; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      vals[k] = f(grid[k]);
    } catch (const std::domain_error&) {
      // inadmissible delta: left as NaN
    }
  }
  GridMin g;
  bool found = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::isnan(vals[k])) continue;
    ++g.admissible;
    if (!found || vals[k] < g.value || (vals[k] == g.value && grid[k] < g.argmin)) {
      g.value = vals[k];
      g.argmin = grid[k];
      found = true;
    }
  }
  if (!found) throw DomainError("grid infimum: no admissible delta in the grid");
  return g;
}

}  // namespace

double psi_bound(int d, double q, double delta, const SolutionNormInputs& in, PsiLinearTerm linear) {
  check_inputs(in);
  const ThetaExponents th(d, q, delta);
  const double dd = d;
  const double t1 = th.theta(1);
  const double bilinear = young_constant(d, t1, th.theta(2)) * in.k_sup * in.k_prime_sup *
                          riesz_constant(th.theta(3)) * riesz_constant(th.theta(4)) * heat_kernel_norm(d, t1) *
                          beta_fn(0.5 * (1.0 - delta) + dd / (2.0 * q), 0.5 * delta);
  double lin = 0.0;
  if (linear == PsiLinearTerm::young) {
    const double inv_r0 = std::min(1.0 + 1.0 / q - 1.0 / dd, 1.0);
    const double r0 = 1.0 / inv_r0;
    lin = young_constant(d, r0, dd) * heat_kernel_norm(d, r0) * in.a_d_norm;
  } else {
    lin = 0.5 * heat_kernel_norm(d, dd * dd / (dd - 1.0)) * in.a_d_norm;
  }
  return bilinear + lin;
}

GridMin psi_min(int d, double q, const SolutionNormInputs& in, const std::vector<double>& delta_grid,
                PsiLinearTerm linear) {
  return grid_min(delta_grid, [&](double delta) { return psi_bound(d, q, delta, in, linear); });
}

double nu_bound(int d, double q, double delta, const SolutionNormInputs& in) {
  check_inputs(in);
  const ThetaExponents th(d, q, delta);
  const double dd = d;
  const double t5 = th.theta(5);
  const double t6 = th.theta(6);
  const double t7 = th.theta(7);
  const double beta_a = 0.5 - 0.5 * dd * (1.0 - 1.0 / t6);
  if (!(beta_a > 0.0)) {
    throw InfeasibleExponent("q < d/delta",
                             "nu_bound: Beta argument 1/2 - d(1-1/theta6)/2 = " + std::to_string(beta_a) +
                                 " is not positive");
  }
  const double lin = young_constant(d, t5, dd) * heat_kernel_grad_norm(d, t5) * in.a_d_norm;
  const double bilinear = young_constant(d, t6, t7) * riesz_constant(t6) * riesz_constant(t7) * in.k_sup *
                          in.k_prime_sup * heat_kernel_grad_norm(d, t6) * beta_fn(beta_a, 0.5 * delta);
  return lin + bilinear;
}

GridMin nu_min(int d, double q, const SolutionNormInputs& in, const std::vector<double>& delta_grid) {
  return grid_min(delta_grid, [&](double delta) { return nu_bound(d, q, delta, in); });
}

double grand_lebesgue_norm(const QProfile& psi, const QProfile& norm) {
  if (psi.size() != norm.size() || psi.empty()) {
    throw DomainError("grand_lebesgue_norm: profiles must share a nonempty q-grid");
  }
  double sup = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (psi[k].first != norm[k].first) throw DomainError("grand_lebesgue_norm: q-grids differ");
    if (!(psi[k].second >= 0.0) || !(norm[k].second >= 0.0)) {
      throw DomainError("grand_lebesgue_norm: profile values must be nonnegative");
    }
    if (norm[k].second == 0.0) continue;
    if (psi[k].second == 0.0) return std::numeric_limits<double>::infinity();
    sup = std::max(sup, norm[k].second / psi[k].second);
  }
  return sup;
}

}  // namespace nslife
