#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nslife/maximize.hpp"

namespace nslife {

/// a(x) = amplitude * A x * exp(-|x|^2 / (2 sigma^2)), A x = (-x2, x1, 0, ..., 0).
/// Divergence free because A is antisymmetric. Norms of vector fields use
/// the pointwise Euclidean magnitude (Frobenius for gradients).
class VortexGaussian {
 public:
  VortexGaussian(int d, double sigma, double amplitude);

  int d() const noexcept { return d_; }
  double sigma() const noexcept { return sigma_; }
  double amplitude() const noexcept { return amplitude_; }

  /// out[i] = a_i(x).
  void value(std::span<const double> x, std::span<double> out) const;
  /// out[i * d + j] = d a_i / d x_j.
  void gradient(std::span<const double> x, std::span<double> out) const;
  double magnitude(std::span<const double> x) const;
  double gradient_frobenius(std::span<const double> x) const;

  /// e^{t Laplacian} a: width^2 = sigma^2 + 2t, amplitude scaled by
  /// (sigma^2 / (sigma^2 + 2t))^{(d+2)/2}.
  VortexGaussian evolve(double t) const;

  VortexGaussian scaled(double c) const { return {d_, sigma_, amplitude_ * c}; }

 private:
  int d_;
  double sigma_;
  double amplitude_;
};

/// ||a||_p in closed form, p >= 1.
double lp_norm(const VortexGaussian& a, double p);

/// ||grad a||_d of the unit vortex (sigma = amplitude = 1) in dimension d,
/// by adaptive quadrature in the two radial variables of the field.
double unit_grad_norm(int d);

/// ||grad a||_d = amplitude * sigma * unit_grad_norm(d).
double grad_norm(const VortexGaussian& a);

/// t^{(1-delta)/2} ||e^{t Laplacian} a||_{d/delta}.
double k0_profile(const VortexGaussian& a, double delta, double t);
/// t^{1/2} ||grad e^{t Laplacian} a||_d, with c_d = unit_grad_norm(d).
double k0_prime_profile(const VortexGaussian& a, double t, double c_d);

/// Sup over t in (0, infinity) of the profile, located numerically.
SupResult k0_peak(const VortexGaussian& a, double delta);
SupResult k0_prime_peak(const VortexGaussian& a, double c_d);

/// sup_{t in (0,T)} t^{(1-delta)/2} ||e^{t Laplacian} a||_{d/delta}; T may be
/// +infinity. Nondecreasing in T.
double k0_exact(const VortexGaussian& a, double delta, double T);
/// sup_{t in (0,T)} t^{1/2} ||grad e^{t Laplacian} a||_d.
double k0_prime_exact(const VortexGaussian& a, double T);

/// Sup of a unimodal profile over (0, T] given its peak.
double sup_up_to(const std::function<double(double)>& profile, const SupResult& peak, double T);

/// Externally supplied (or computed) norms of the datum.
struct NormBundle {
  std::map<double, double> lp_norms;      ///< p -> ||a||_p
  std::optional<double> grad_d_norm;      ///< ||grad a||_d
  std::optional<double> theta;            ///< extra integrability exponent
  std::optional<double> norm_d_plus_theta;  ///< ||a||_{d+theta}

  std::optional<double> lp(double p) const;
  NormBundle scaled(double c) const;
};

/// Norms of a vortex: lp for each p, ||grad a||_d, and ||a||_{d+theta} if theta set.
NormBundle norm_bundle(const VortexGaussian& a, const std::vector<double>& ps,
                       std::optional<double> theta = std::nullopt);

/// T^{theta delta / (2d)} 2^{d+theta} ||a||_{d+theta}. Requires
/// 0 < theta <= min(1, (d-1)/delta). Throws UnavailableBound without the
/// (theta, ||a||_{d+theta}) pair. As an upper bound on K0(T) it holds for
/// T <= 1 when delta <= d/(d+theta); see literal_k0_bound_valid.
double k0_bound_from_norms(const NormBundle& norms, int d, double delta, double theta, double T);
bool literal_k0_bound_valid(int d, double delta, double theta, double T);

/// Young-inequality bound K_BL(d; r, d+theta) M(d, r) T^{theta/(2(d+theta))} ||a||_{d+theta},
/// 1/r = 1 + delta/d - 1/(d+theta). Requires delta <= d/(d+theta).
double k0_young_bound_from_norms(const NormBundle& norms, int d, double delta, double theta, double T);
bool young_k0_bound_available(int d, double delta, double theta);

/// sqrt(T) ||grad a||_d. Throws UnavailableBound without grad_d_norm.
double k0_prime_bound_from_norms(const NormBundle& norms, double T);

}  // namespace nslife
