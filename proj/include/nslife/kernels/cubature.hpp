#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nslife::kernels {

/// f(x) with x of length dims.
using Integrand = std::function<double(std::span<const double>)>;

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  std::size_t dims() const noexcept { return lo.size(); }
};

struct CubatureOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-300;
  std::size_t max_intervals = 400;  ///< per 1-D adaptive level
};

struct CubatureResult {
  double value = 0.0;
  double error = 0.0;  ///< sum of Gauss-Kronrod error estimates, outermost level
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b].
CubatureResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const CubatureOptions& opt = {});

/// Nested adaptive Gauss-Kronrod over a box: dimension 0 outermost.
/// Serial reference implementation.
CubatureResult cubature_serial(const Integrand& f, const Box& box, const CubatureOptions& opt = {});

/// Same scheme with the outermost dimension cut into `panels` equal slabs
/// integrated in parallel and summed pairwise in slab order, so the result
/// does not depend on the thread count. panels = 0 picks a default.
CubatureResult cubature_omp(const Integrand& f, const Box& box, const CubatureOptions& opt = {},
                            std::size_t panels = 0);

/// Pairwise sum in index order.
double pairwise_sum(std::span<const double> v);

}  // namespace nslife::kernels
