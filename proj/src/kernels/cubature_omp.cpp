#include <vector>

#include "cubature_internal.hpp"
#include "nslife/kernels/cubature.hpp"

namespace nslife::kernels {

CubatureResult cubature_omp(const Integrand& f, const Box& box, const CubatureOptions& opt,
                            std::size_t panels) {
  validate_box(box);
  if (panels == 0) panels = 16;
  const double a = box.lo[0];
  const double width = (box.hi[0] - a) / static_cast<double>(panels);
  std::vector<CubatureResult> parts(panels);
  const long n = static_cast<long>(panels);
#if defined(NSLIFE_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long i = 0; i < n; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == n) ? box.hi[0] : a + width * static_cast<double>(i + 1);
    parts[static_cast<std::size_t>(i)] = cubature_slab(f, box, opt, lo, hi);
  }
  std::vector<double> values(panels);
  std::vector<double> errors(panels);
  CubatureResult r;
  for (std::size_t i = 0; i < panels; ++i) {
    values[i] = parts[i].value;
    errors[i] = parts[i].error;
    r.evaluations += parts[i].evaluations;
    r.converged = r.converged && parts[i].converged;
  }
  r.value = pairwise_sum(values);
  r.error = pairwise_sum(errors);
  return r;
}

}  // namespace nslife::kernels
