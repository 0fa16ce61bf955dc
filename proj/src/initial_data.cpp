#include "nslife/initial_data.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nslife/constants.hpp"
#include "nslife/errors.hpp"
#include "nslife/kernels/cubature.hpp"
#include "nslife/special_functions.hpp"

namespace nslife {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Peak search window in units of sigma^2.
constexpr double kScanLo = 1e-12;
constexpr double kScanHi = 1e12;

}  // namespace

VortexGaussian::VortexGaussian(int d, double sigma, double amplitude)
    : d_(d), sigma_(sigma), amplitude_(amplitude) {
  if (d < 2) throw DomainError("VortexGaussian: dimension must be >= 2");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("VortexGaussian: sigma must be > 0");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("VortexGaussian: amplitude must be finite and >= 0");
  }
}

void VortexGaussian::value(std::span<const double> x, std::span<double> out) const {
  double r2 = 0.0;
  for (int k = 0; k < d_; ++k) r2 += x[k] * x[k];
  const double g = amplitude_ * std::exp(-r2 / (2.0 * sigma_ * sigma_));
  for (int k = 0; k < d_; ++k) out[k] = 0.0;
  out[0] = -x[1] * g;
  out[1] = x[0] * g;
}

void VortexGaussian::gradient(std::span<const double> x, std::span<double> out) const {
  double r2 = 0.0;
  for (int k = 0; k < d_; ++k) r2 += x[k] * x[k];
  const double s2 = sigma_ * sigma_;
  const double g = amplitude_ * std::exp(-r2 / (2.0 * s2));
  const double ax[2] = {-x[1], x[0]};
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) {
      double v = 0.0;
      if (i < 2) v = -ax[i] * x[j] / s2;
      if (i == 0 && j == 1) v -= 1.0;
      if (i == 1 && j == 0) v += 1.0;
      out[static_cast<std::size_t>(i * d_ + j)] = g * v;
    }
  }
}

double VortexGaussian::magnitude(std::span<const double> x) const {
  double r2 = 0.0;
  for (int k = 0; k < d_; ++k) r2 += x[k] * x[k];
  const double rho = std::hypot(x[0], x[1]);
  return amplitude_ * rho * std::exp(-r2 / (2.0 * sigma_ * sigma_));
}

double VortexGaussian::gradient_frobenius(std::span<const double> x) const {
  double r2 = 0.0;
  for (int k = 0; k < d_; ++k) r2 += x[k] * x[k];
  const double s2 = sigma_ * sigma_;
  const double rho2 = x[0] * x[0] + x[1] * x[1];
  const double g = amplitude_ * std::exp(-r2 / (2.0 * s2));
  const double inner = 2.0 - 2.0 * rho2 / s2 + rho2 * r2 / (s2 * s2);
  return g * std::sqrt(std::max(inner, 0.0));
}

VortexGaussian VortexGaussian::evolve(double t) const {
  if (!(t >= 0.0)) throw DomainError("VortexGaussian::evolve: t must be >= 0");
  const double s2 = sigma_ * sigma_;
  const double st2 = s2 + 2.0 * t;
  const double amp = amplitude_ * std::pow(s2 / st2, 0.5 * (d_ + 2));
  return {d_, std::sqrt(st2), amp};
}

double lp_norm(const VortexGaussian& a, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm: need finite p >= 1");
  if (a.amplitude() == 0.0) return 0.0;
  const double s2 = a.sigma() * a.sigma();
  const double m = a.d() - 2;
  // log of: (2 pi s2/p)^{m/2} * pi * Gamma(p/2+1) * (2 s2/p)^{p/2+1}
  const double log_int = 0.5 * m * std::log(2.0 * std::numbers::pi * s2 / p) + std::log(std::numbers::pi) +
                         log_gamma(0.5 * p + 1.0) + (0.5 * p + 1.0) * std::log(2.0 * s2 / p);
  return a.amplitude() * std::exp(log_int / p);
}

double unit_grad_norm(int d) {
  if (d < 3) throw DomainError("unit_grad_norm: dimension must be >= 3");
  const double dd = d;
  const double m = dd - 2.0;
  const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * m) / gamma_fn(0.5 * m);
  const double half = 0.5 * dd;
  auto f = [dd, m, half](std::span<const double> x) {
    const double rho = x[0];
    const double zeta = x[1];
    const double r2 = rho * rho + zeta * zeta;
    const double rho2 = rho * rho;
    const double inner = 2.0 - 2.0 * rho2 + rho2 * r2;
    const double zp = (m == 1.0) ? 1.0 : std::pow(zeta, m - 1.0);
    return rho * zp * std::exp(-0.5 * dd * r2) * std::pow(inner, half);
  };
  const double L = std::sqrt(2.0 * 80.0 / dd);
  kernels::CubatureOptions opt;
  opt.rel_tol = 1e-13;
  const kernels::Box box{{0.0, 0.0}, {L, L}};
  const double integral = kernels::cubature_serial(f, box, opt).value;
  return std::pow(2.0 * std::numbers::pi * sphere * integral, 1.0 / dd);
}

double grad_norm(const VortexGaussian& a) {
  if (a.amplitude() == 0.0) return 0.0;
  return a.amplitude() * a.sigma() * unit_grad_norm(a.d());
}

double k0_profile(const VortexGaussian& a, double delta, double t) {
  if (!(t > 0.0)) return 0.0;
  return std::pow(t, 0.5 * (1.0 - delta)) * lp_norm(a.evolve(t), a.d() / delta);
}

double k0_prime_profile(const VortexGaussian& a, double t, double c_d) {
  if (!(t > 0.0)) return 0.0;
  const VortexGaussian u = a.evolve(t);
  return std::sqrt(t) * u.amplitude() * u.sigma() * c_d;
}

SupResult k0_peak(const VortexGaussian& a, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("k0_peak: delta must lie in (0, 1)");
  const double s2 = a.sigma() * a.sigma();
  return maximize_log([&](double t) { return k0_profile(a, delta, t); }, kScanLo * s2, kScanHi * s2);
}

SupResult k0_prime_peak(const VortexGaussian& a, double c_d) {
  const double s2 = a.sigma() * a.sigma();
  return maximize_log([&](double t) { return k0_prime_profile(a, t, c_d); }, kScanLo * s2, kScanHi * s2);
}

double sup_up_to(const std::function<double(double)>& profile, const SupResult& peak, double T) {
  if (!(T > 0.0)) return 0.0;
  if (T >= peak.t_star) {
    // With the argmax at the upper scan end the profile is still rising there.
    if (!peak.interior && peak.t_star > 0.0 && std::isfinite(T) && T > peak.t_star) {
      return std::max(profile(T), peak.value);
    }
    return peak.value;
  }
  return std::min(profile(T), peak.value);
}

double k0_exact(const VortexGaussian& a, double delta, double T) {
  const SupResult peak = k0_peak(a, delta);
  return sup_up_to([&](double t) { return k0_profile(a, delta, t); }, peak, T);
}

double k0_prime_exact(const VortexGaussian& a, double T) {
  const double c_d = unit_grad_norm(a.d());
  const SupResult peak = k0_prime_peak(a, c_d);
  return sup_up_to([&](double t) { return k0_prime_profile(a, t, c_d); }, peak, T);
}

std::optional<double> NormBundle::lp(double p) const {
  auto it = lp_norms.find(p);
  if (it == lp_norms.end()) return std::nullopt;
  return it->second;
}

NormBundle NormBundle::scaled(double c) const {
  NormBundle out = *this;
  for (auto& [p, v] : out.lp_norms) v *= c;
  if (out.grad_d_norm) *out.grad_d_norm *= c;
  if (out.norm_d_plus_theta) *out.norm_d_plus_theta *= c;
  return out;
}

NormBundle norm_bundle(const VortexGaussian& a, const std::vector<double>& ps, std::optional<double> theta) {
  NormBundle nb;
  for (double p : ps) nb.lp_norms[p] = lp_norm(a, p);
  nb.lp_norms[a.d()] = lp_norm(a, a.d());
  nb.grad_d_norm = grad_norm(a);
  if (theta) {
    nb.theta = theta;
    nb.norm_d_plus_theta = lp_norm(a, a.d() + *theta);
  }
  return nb;
}

namespace {

void check_theta(int d, double delta, double theta) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("k0 bound: delta must lie in (0, 1)");
  const double cap = std::min(1.0, (d - 1.0) / delta);
  if (!(theta > 0.0) || !(theta <= cap)) {
    throw DomainError("k0 bound: theta must lie in (0, min(1, (d-1)/delta)]");
  }
}

double theta_norm(const NormBundle& norms, double theta) {
  if (!norms.norm_d_plus_theta) {
    throw UnavailableBound("k0 bound: ||a||_{d+theta} not supplied");
  }
  if (norms.theta && std::abs(*norms.theta - theta) > 1e-15) {
    throw UnavailableBound("k0 bound: supplied ||a||_{d+theta} is for a different theta");
  }
  return *norms.norm_d_plus_theta;
}

}  // namespace

double k0_bound_from_norms(const NormBundle& norms, int d, double delta, double theta, double T) {
  check_theta(d, delta, theta);
  const double n = theta_norm(norms, theta);
  if (!(T >= 0.0)) throw DomainError("k0_bound_from_norms: T must be >= 0");
  if (T == 0.0) return 0.0;
  return std::pow(T, theta * delta / (2.0 * d)) * std::pow(2.0, d + theta) * n;
}

bool literal_k0_bound_valid(int d, double delta, double theta, double T) {
  return T <= 1.0 && delta <= d / (d + theta);
}

bool young_k0_bound_available(int d, double delta, double theta) { return delta <= d / (d + theta); }

double k0_young_bound_from_norms(const NormBundle& norms, int d, double delta, double theta, double T) {
  check_theta(d, delta, theta);
  const double n = theta_norm(norms, theta);
  if (!young_k0_bound_available(d, delta, theta)) {
    throw InfeasibleExponent("delta <= d/(d+theta)", "k0 Young bound: kernel exponent r < 1");
  }
  if (!(T >= 0.0)) throw DomainError("k0_young_bound_from_norms: T must be >= 0");
  if (T == 0.0) return 0.0;
  const double p = d + theta;
  double inv_r = 1.0 + delta / d - 1.0 / p;
  inv_r = std::min(inv_r, 1.0);
  const double r = 1.0 / inv_r;
  const double kbl = young_constant(d, r, p);
  if (!std::isfinite(T)) return kInf;
  return kbl * heat_kernel_norm(d, r) * std::pow(T, theta / (2.0 * p)) * n;
}

double k0_prime_bound_from_norms(const NormBundle& norms, double T) {
  if (!norms.grad_d_norm) throw UnavailableBound("k0_prime bound: ||grad a||_d not supplied");
  if (!(T >= 0.0)) throw DomainError("k0_prime_bound_from_norms: T must be >= 0");
  return std::sqrt(T) * *norms.grad_d_norm;
}

}  // namespace nslife
