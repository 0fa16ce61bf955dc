#include "nslife/recurrence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nslife/errors.hpp"

namespace nslife {

double discriminant(double alpha, double beta, double gamma) {
  return (beta - 1.0) * (beta - 1.0) - 4.0 * alpha * gamma;
}

double upper_root(double alpha, double beta, double gamma) {
  const double disc = discriminant(alpha, beta, gamma);
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (1.0 - beta + std::sqrt(disc)) / (2.0 * gamma);
}

double lower_root(double alpha, double beta, double gamma) {
  const double disc = discriminant(alpha, beta, gamma);
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  // 2 alpha / (1 - beta + sqrt D) avoids cancellation when alpha gamma is small.
  const double denom = 1.0 - beta + std::sqrt(disc);
  if (denom > 0.0) return 2.0 * alpha / denom;
  return (1.0 - beta - std::sqrt(disc)) / (2.0 * gamma);
}

Checked<double> fixed_point_bound(const ScalarRecurrence& rec) {
  if (!(rec.gamma > 0.0)) {
    throw DomainError("fixed_point_bound: gamma must be > 0, got " + std::to_string(rec.gamma));
  }
  if (rec.alpha < 0.0) return HypothesisFailure{"alpha >= 0", rec.alpha};
  if (rec.beta < 0.0) return HypothesisFailure{"beta >= 0", rec.beta};
  if (rec.x0 < 0.0) return HypothesisFailure{"x0 >= 0", rec.x0};
  const double disc = discriminant(rec.alpha, rec.beta, rec.gamma);
  if (!(disc > 0.0)) return HypothesisFailure{"D > 0", disc};
  const double z = upper_root(rec.alpha, rec.beta, rec.gamma);
  if (!(z > 0.0)) return HypothesisFailure{"Z > 0", z};
  if (!(rec.x0 < z)) return HypothesisFailure{"x0 < Z", z - rec.x0};
  return z;
}

Checked<CoupledBound> coupled_bound(const CoupledRecurrence& rec) {
  if (!(rec.alpha1 > 0.0) || !(rec.alpha2 > 0.0) || !(rec.beta1 > 0.0) || !(rec.beta2 > 0.0)) {
    throw DomainError("coupled_bound: alpha1, alpha2, beta1, beta2 must be > 0");
  }
  CoupledBound b;
  b.det1 = rec.alpha2 * rec.beta1 - rec.alpha1 * rec.beta2;
  const double det2 = -b.det1;
  b.d1 = discriminant(rec.alpha1, b.det1, rec.beta2);
  b.d2 = discriminant(rec.alpha2, det2, rec.beta1);
  b.d1_plus = (b.det1 + 1.0) * (b.det1 + 1.0) - 4.0 * rec.alpha1 * rec.beta2;
  b.d2_plus = (det2 + 1.0) * (det2 + 1.0) - 4.0 * rec.alpha2 * rec.beta1;
  if (!(b.d1 > 0.0)) return HypothesisFailure{"D(alpha1, Det1, beta2) > 0", b.d1};
  if (!(b.d2 > 0.0)) return HypothesisFailure{"D(alpha2, Det2, beta1) > 0", b.d2};
  if (!(b.d1_plus > 0.0)) return HypothesisFailure{"(Det1+1)^2 - 4 alpha1 beta2 > 0", b.d1_plus};
  if (!(b.d2_plus > 0.0)) return HypothesisFailure{"(Det2+1)^2 - 4 alpha2 beta1 > 0", b.d2_plus};
  b.x_bound = upper_root(rec.alpha1, b.det1, rec.beta2);
  b.y_bound = upper_root(rec.alpha2, det2, rec.beta1);
  if (!(b.x_bound > 0.0)) return HypothesisFailure{"Z(alpha1, Det1, beta2) > 0", b.x_bound};
  if (!(b.y_bound > 0.0)) return HypothesisFailure{"Z(alpha2, Det2, beta1) > 0", b.y_bound};
  if (!(rec.x0 > 0.0)) return HypothesisFailure{"x0 > 0", rec.x0};
  if (!(rec.y0 > 0.0)) return HypothesisFailure{"y0 > 0", rec.y0};
  if (!(rec.x0 < b.x_bound)) return HypothesisFailure{"x0 < Z(alpha1, Det1, beta2)", b.x_bound - rec.x0};
  if (!(rec.y0 < b.y_bound)) return HypothesisFailure{"y0 < Z(alpha2, Det2, beta1)", b.y_bound - rec.y0};
  return b;
}

Trajectory iterate_worst_case(const ScalarRecurrence& rec, std::size_t n_steps) {
  if (n_steps < 1) throw DomainError("iterate_worst_case: n_steps must be >= 1");
  Trajectory tr;
  tr.x.reserve(n_steps + 1);
  double x = rec.x0;
  tr.x.push_back(x);
  tr.sup = x;
  for (std::size_t n = 0; n < n_steps; ++n) {
    x = rec.alpha + rec.beta * x + rec.gamma * x * x;
    tr.x.push_back(x);
    tr.steps = n + 1;
    if (!std::isfinite(x) || x > kDivergenceCeiling) {
      tr.diverged = true;
      tr.sup = std::numeric_limits<double>::infinity();
      return tr;
    }
    if (x > tr.sup) tr.sup = x;
  }
  return tr;
}

CoupledTrajectory iterate_worst_case(const CoupledRecurrence& rec, std::size_t n_steps) {
  if (n_steps < 1) throw DomainError("iterate_worst_case: n_steps must be >= 1");
  CoupledTrajectory tr;
  tr.x.reserve(n_steps + 1);
  tr.y.reserve(n_steps + 1);
  double x = rec.x0;
  double y = rec.y0;
  tr.x.push_back(x);
  tr.y.push_back(y);
  tr.sup_x = x;
  tr.sup_y = y;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double prod = x * y;
    x = rec.alpha1 + rec.beta1 * prod;
    y = rec.alpha2 + rec.beta2 * prod;
    tr.x.push_back(x);
    tr.y.push_back(y);
    tr.steps = n + 1;
    if (!std::isfinite(x) || !std::isfinite(y) || x > kDivergenceCeiling ||
        y > kDivergenceCeiling) {
      tr.diverged = true;
      tr.sup_x = tr.sup_y = std::numeric_limits<double>::infinity();
      return tr;
    }
    if (x > tr.sup_x) tr.sup_x = x;
    if (y > tr.sup_y) tr.sup_y = y;
  }
  return tr;
}

}  // namespace nslife
