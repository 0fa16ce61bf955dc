#include "nslife/kernels/recurrence_batch.hpp"

#include <cmath>
#include <limits>

namespace nslife::kernels {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Rec>
std::vector<SupVerdict> batch_serial(std::span<const Rec> recs, std::size_t n_steps) {
  std::vector<SupVerdict> out(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) out[i] = extremal_sup(recs[i], n_steps);
  return out;
}

template <class Rec>
std::vector<SupVerdict> batch_omp(std::span<const Rec> recs, std::size_t n_steps) {
  std::vector<SupVerdict> out(recs.size());
  const long n = static_cast<long>(recs.size());
#if defined(NSLIFE_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = extremal_sup(recs[static_cast<std::size_t>(i)], n_steps);
  }
  return out;
}

}  // namespace

SupVerdict extremal_sup(const ScalarRecurrence& rec, std::size_t n_steps) {
  SupVerdict v;
  double x = rec.x0;
  v.sup_x = x;
  for (std::size_t n = 0; n < n_steps; ++n) {
    x = rec.alpha + rec.beta * x + rec.gamma * x * x;
    if (!std::isfinite(x) || x > kDivergenceCeiling) {
      v.diverged = true;
      v.sup_x = kInf;
      return v;
    }
    if (x > v.sup_x) v.sup_x = x;
  }
  return v;
}

SupVerdict extremal_sup(const CoupledRecurrence& rec, std::size_t n_steps) {
  SupVerdict v;
  double x = rec.x0;
  double y = rec.y0;
  v.sup_x = x;
  v.sup_y = y;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double prod = x * y;
    x = rec.alpha1 + rec.beta1 * prod;
    y = rec.alpha2 + rec.beta2 * prod;
    if (!std::isfinite(x) || !std::isfinite(y) || x > kDivergenceCeiling || y > kDivergenceCeiling) {
      v.diverged = true;
      v.sup_x = v.sup_y = kInf;
      return v;
    }
    if (x > v.sup_x) v.sup_x = x;
    if (y > v.sup_y) v.sup_y = y;
  }
  return v;
}

std::vector<SupVerdict> extremal_sup_serial(std::span<const ScalarRecurrence> recs, std::size_t n_steps) {
  return batch_serial(recs, n_steps);
}
std::vector<SupVerdict> extremal_sup_omp(std::span<const ScalarRecurrence> recs, std::size_t n_steps) {
  return batch_omp(recs, n_steps);
}
std::vector<SupVerdict> extremal_sup_serial(std::span<const CoupledRecurrence> recs, std::size_t n_steps) {
  return batch_serial(recs, n_steps);
}
std::vector<SupVerdict> extremal_sup_omp(std::span<const CoupledRecurrence> recs, std::size_t n_steps) {
  return batch_omp(recs, n_steps);
}

}  // namespace nslife::kernels
