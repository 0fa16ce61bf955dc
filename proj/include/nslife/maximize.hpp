#pragma once

#include <functional>

namespace nslife {

struct SupResult {
  double t_star = 0.0;  ///< maximizer (an endpoint when the sup is not interior)
  double value = 0.0;
  bool interior = false;
  int evaluations = 0;
};

/// Golden-section search for a maximum of g on [a, b]; stops when the
/// bracket is shorter than tol.
SupResult golden_section_max(const std::function<double(double)>& g, double a, double b, double tol);

/// Sup of a positive f over [t_lo, t_hi] in the variable log t. A log grid of
/// `scan` points brackets the maximum where the discrete log-derivative
/// changes sign; golden-section then refines to relative width rel_tol in t.
/// An argmax at a grid end is returned as an endpoint sup.
SupResult maximize_log(const std::function<double(double)>& f, double t_lo, double t_hi,
                       double rel_tol = 1e-10, int scan = 97);

}  // namespace nslife
