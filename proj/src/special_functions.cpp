#include "nslife/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nslife/errors.hpp"

namespace nslife {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5050632674586050e-7};

// Series part of the Lanczos approximation for Gamma(z + 1).
double lanczos_sum(double z) {
  double acc = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    acc += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  return acc;
}

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  // tgamma is exact to a few ulp and, unlike lgamma, leaves signgam alone.
  if (x <= 170.0) return std::log(std::tgamma(x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  return std::tgamma(x);
}

double beta_fn(double x, double y) {
  require_positive(x, "beta_fn");
  require_positive(y, "beta_fn");
  if (x + y <= 170.0) return std::tgamma(x) / std::tgamma(x + y) * std::tgamma(y);
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace nslife
