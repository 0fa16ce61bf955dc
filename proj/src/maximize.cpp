#include "nslife/maximize.hpp"

#include <cmath>
#include <vector>

#include "nslife/errors.hpp"

namespace nslife {

SupResult golden_section_max(const std::function<double(double)>& g, double a, double b, double tol) {
  if (!(a < b)) throw DomainError("golden_section_max: need a < b");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  SupResult r;
  r.evaluations = 2;
  while (b - a > tol) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
    ++r.evaluations;
  }
  if (gc >= gd) {
    r.t_star = c;
    r.value = gc;
  } else {
    r.t_star = d;
    r.value = gd;
  }
  r.interior = true;
  return r;
}

SupResult maximize_log(const std::function<double(double)>& f, double t_lo, double t_hi, double rel_tol,
                       int scan) {
  if (!(t_lo > 0.0) || !(t_lo < t_hi) || !std::isfinite(t_hi)) {
    throw DomainError("maximize_log: need 0 < t_lo < t_hi < infinity");
  }
  if (scan < 3) throw DomainError("maximize_log: scan must be >= 3");
  const double u_lo = std::log(t_lo);
  const double u_hi = std::log(t_hi);
  const double du = (u_hi - u_lo) / (scan - 1);
  std::vector<double> vals(static_cast<std::size_t>(scan));
  int best = 0;
  for (int i = 0; i < scan; ++i) {
    const double u = (i == scan - 1) ? u_hi : u_lo + du * i;
    vals[static_cast<std::size_t>(i)] = f(std::exp(u));
    if (vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(best)]) best = i;
  }
  SupResult r;
  r.evaluations = scan;
  if (best == 0 || best == scan - 1) {
    r.t_star = best == 0 ? t_lo : t_hi;
    r.value = vals[static_cast<std::size_t>(best)];
    r.interior = false;
    return r;
  }
  auto g = [&f](double u) { return f(std::exp(u)); };
  const double a = u_lo + du * (best - 1);
  const double b = u_lo + du * (best + 1);
  SupResult gs = golden_section_max(g, a, b, rel_tol);
  gs.evaluations += scan;
  gs.t_star = std::exp(gs.t_star);
  if (vals[static_cast<std::size_t>(best)] > gs.value) {
    gs.value = vals[static_cast<std::size_t>(best)];
    gs.t_star = std::exp(u_lo + du * best);
  }
  return gs;
}

}  // namespace nslife
