#include "nslife/constants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "nslife/errors.hpp"
#include "nslife/special_functions.hpp"

namespace nslife {
namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_dimension(int d, int min_d, const char* fn) {
  if (d < min_d) {
    throw DomainError(std::string(fn) + ": dimension must be >= " + std::to_string(min_d) +
                      ", got " + std::to_string(d));
  }
}

// u^{-u} for u in [0, 1], continuous at u = 0. With u = 1/m this is m^{1/m}.
double self_power(double u) { return u == 0.0 ? 1.0 : std::exp(-u * std::log(u)); }

// Beckner's A_m^2 = m^{1/m} / m'^{1/m'} written in u = 1/m.
double beckner_factor(double u) { return self_power(u) / self_power(1.0 - u); }

}  // namespace

ExponentPair::ExponentPair(double p, double q) : p_(p), q_(q) {
  if (!(p >= 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("ExponentPair: exponents must be finite and >= 1, got p=" + fmt_num(p) +
                      " q=" + fmt_num(q));
  }
}

double sobolev_constant(int d, double p) {
  require_dimension(d, 1, "sobolev_constant");
  if (!(p >= 1.0) || !(p < d)) {
    throw DomainError("sobolev_constant: need 1 <= p < d, got p=" + fmt_num(p) +
                      " d=" + std::to_string(d));
  }
  const double dd = d;
  const double lead = std::pow(std::numbers::pi, -0.5) * std::pow(dd, -1.0 / p);
  const double ratio_power =
      (p == 1.0) ? 1.0 : std::pow((p - 1.0) / (dd - p), (p - 1.0) / p);
  const double log_gamma_ratio = log_gamma(1.0 + dd / 2.0) + log_gamma(dd) -
                                 log_gamma(dd / p) - log_gamma(1.0 + dd - dd / p);
  return lead * ratio_power * std::exp(log_gamma_ratio / dd);
}

double riesz_constant(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("riesz_constant: need finite p > 1, got " + fmt_num(p));
  }
  const double p_star = std::max(p, p / (p - 1.0));
  return 1.0 / std::tan(std::numbers::pi / (2.0 * p_star));
}

double young_constant(int d, const ExponentPair& pq) {
  require_dimension(d, 1, "young_constant");
  double inv_r = pq.inv_r();
  if (inv_r < 0.0 && inv_r > -1e-15) inv_r = 0.0;
  if (!(inv_r >= 0.0) || !(inv_r <= 1.0)) {
    throw DomainError("young_constant: 1/r = 1/p + 1/q - 1 = " + fmt_num(inv_r) +
                      " outside [0, 1] for p=" + fmt_num(pq.p()) + " q=" + fmt_num(pq.q()));
  }
  const double base =
      beckner_factor(pq.inv_p()) * beckner_factor(pq.inv_q()) / beckner_factor(inv_r);
  return std::pow(base, 0.5 * d);
}

double young_constant(int d, double p, double q) { return young_constant(d, ExponentPair(p, q)); }

double heat_kernel_norm(int d, double r) {
  require_dimension(d, 1, "heat_kernel_norm");
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw DomainError("heat_kernel_norm: need finite r >= 1, got " + fmt_num(r));
  }
  const double dd = d;
  return std::pow(2.0, dd / r) * std::pow(std::numbers::pi, -dd * (1.0 - 1.0 / r) / 2.0) *
         std::pow(r, -dd / (2.0 * r));
}

double heat_kernel_grad_norm(int d, double r) {
  if (!(r >= 1.0)) {
    throw DomainError("heat_kernel_grad_norm: need r >= 1, got " + fmt_num(r));
  }
  return 0.5 * heat_kernel_norm(d, d + r);
}

double j_upper1(int d, double delta) {
  const double dd = d;
  return 9.0 * dd * dd / (2.0 * delta * delta);
}

double j_upper2(int d, double delta) {
  const double dd = d;
  return 81.0 * dd * dd / (4.0 * kSqrtPi * delta * (1.0 - delta));
}

double j_combined(int d, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw DomainError("j_combined: delta must lie in (0, 1), got " + fmt_num(delta));
  }
  return std::max(j_upper1(d, delta), j_upper2(d, delta));
}

ConstantSet composite_constants(int d, double delta) {
  require_dimension(d, 3, "composite_constants");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw DomainError("composite_constants: delta must lie in (0, 1), got " + fmt_num(delta));
  }
  const double dd = d;
  ConstantSet c;
  c.d = d;
  c.delta = delta;

  c.ks[1.0] = sobolev_constant(d, 1.0);
  c.ks[2.0] = sobolev_constant(d, 2.0);
  c.kr[dd] = riesz_constant(dd);
  c.kr[dd / delta] = riesz_constant(dd / delta);

  c.r_s1 = dd / (dd - 1.0 + delta);
  const double r_alt = dd * dd / (dd - 1.0);
  c.m[1.0] = heat_kernel_norm(d, 1.0);
  c.m[c.r_s1] = heat_kernel_norm(d, c.r_s1);
  c.m[r_alt] = heat_kernel_norm(d, r_alt);
  c.m_prime[1.0] = heat_kernel_grad_norm(d, 1.0);

  c.s1 = young_constant(d, dd, c.r_s1) * c.m[c.r_s1];
  const double kbl_unit = young_constant(d, 1.0, dd);
  c.s2 = 0.5 * kbl_unit * c.m[1.0];
  c.s2_alt = 0.5 * kbl_unit * c.m[r_alt];

  const double kr_d = c.kr[dd];
  c.j1 = c.kr[dd / delta] * kr_d * kSqrtPi *
         std::exp(log_gamma(delta / 2.0) - log_gamma((1.0 + delta) / 2.0));
  c.j2 = kr_d * kr_d * std::exp(log_gamma((1.0 - delta) / 2.0) + log_gamma(delta / 2.0)) /
         kSqrtPi;

  c.j_up1 = j_upper1(d, delta);
  c.j_up2 = j_upper2(d, delta);
  c.delta0 = kDelta0;
  c.c1 = 9.0 / (2.0 * kDelta0 * kDelta0);
  c.j_bar = c.c1 * dd * dd;
  // At delta0 both upper bounds coincide with J-bar; use the same rounding.
  c.j = (delta == kDelta0) ? c.j_bar : std::max(c.j_up1, c.j_up2);
  c.c2 = 3.0 / (16.0 * c.c1);
  c.c3 = 4.0 * c.c2;

  c.notes.push_back("C3 = 4*C2 = 3/(4*C1) = " + fmt_num(c.c3) + "; printed reference value " +
                    fmt_num(kPrintedC3) + " differs in the 4th significant digit");
  if (d == 3) {
    c.notes.push_back("C3/d^2 = " + fmt_num(c.c3 / 9.0) + " for d=3; printed reference " +
                      fmt_num(kPrintedC3OverD2AtD3));
  }
  c.notes.push_back("M(d,1) = 2^d from the closed form; the heat kernel has unit L1 norm, "
                    "which the gradient-of-data bound uses");
  c.notes.push_back("K_S(d,1) uses the limit ((p-1)/(d-p))^((p-1)/p) -> 1");
  if (delta != kDelta0) {
    c.notes.push_back("threshold uses J(d,delta) = " + fmt_num(c.j) + " (J-bar = " +
                      fmt_num(c.j_bar) + " only at delta0)");
  }
  return c;
}

const ConstantSet& ConstantCache::get(int d, double delta) {
  std::lock_guard lock(mutex_);
  const auto key = std::make_pair(d, delta);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, composite_constants(d, delta)).first;
  }
  return it->second;
}

}  // namespace nslife
