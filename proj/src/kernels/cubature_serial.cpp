#include <algorithm>
#include <cmath>
#include <vector>

#include "nslife/errors.hpp"
#include "nslife/kernels/cubature.hpp"
#include "cubature_internal.hpp"

namespace nslife::kernels {
namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

bool less_error(const Segment& x, const Segment& y) {
  if (x.error != y.error) return x.error < y.error;
  return x.a > y.a;  // deterministic tie break
}

template <class F>
Segment gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class F>
CubatureResult adaptive(const F& f, double a, double b, const CubatureOptions& opt) {
  CubatureResult res;
  if (a == b) return res;
  std::vector<Segment> heap;
  heap.reserve(32);
  heap.push_back(gk15(f, a, b));
  res.evaluations = 15;
  double total = heap.front().value;
  double err = heap.front().error;
  const double min_width = 1e-13 * std::abs(b - a);
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (heap.size() >= opt.max_intervals) {
      res.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), less_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) < min_width) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), less_error);
      res.converged = false;
      break;
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    res.evaluations += 30;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), less_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), less_error);
    // Full re-sum: running updates drift once cancellation sets in.
    total = 0.0;
    err = 0.0;
    for (const auto& s : heap) {
      total += s.value;
      err += s.error;
    }
  }
  res.value = total;
  res.error = err;
  return res;
}

struct Nested {
  const Integrand& f;
  const Box& box;
  const CubatureOptions& opt;
  std::vector<double> point;
  std::size_t evaluations = 0;
  bool converged = true;

  double level(std::size_t k) {
    if (k == box.dims()) {
      ++evaluations;
      return f(std::span<const double>(point));
    }
    auto g = [this, k](double xk) {
      point[k] = xk;
      return level(k + 1);
    };
    const CubatureResult r = adaptive(g, box.lo[k], box.hi[k], opt);
    if (!r.converged) converged = false;
    return r.value;
  }
};

}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

CubatureResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const CubatureOptions& opt) {
  return adaptive(f, a, b, opt);
}

void validate_box(const Box& box) {
  if (box.lo.size() != box.hi.size() || box.lo.empty()) {
    throw DomainError("cubature: box bounds must be non-empty and of equal length");
  }
  for (std::size_t k = 0; k < box.dims(); ++k) {
    if (!(box.lo[k] <= box.hi[k]) || !std::isfinite(box.lo[k]) || !std::isfinite(box.hi[k])) {
      throw DomainError("cubature: invalid box extent in dimension " + std::to_string(k));
    }
  }
}

CubatureResult cubature_serial(const Integrand& f, const Box& box, const CubatureOptions& opt) {
  validate_box(box);
  Nested n{f, box, opt, std::vector<double>(box.dims(), 0.0)};
  auto outer = [&n](double x0) {
    n.point[0] = x0;
    return n.level(1);
  };
  CubatureResult r = adaptive(outer, box.lo[0], box.hi[0], opt);
  r.evaluations = n.evaluations;
  r.converged = r.converged && n.converged;
  return r;
}

// Shared with cubature_omp.cpp: integrates one slab [a, b] of dimension 0.
CubatureResult cubature_slab(const Integrand& f, const Box& box, const CubatureOptions& opt, double a,
                             double b) {
  Nested n{f, box, opt, std::vector<double>(box.dims(), 0.0)};
  auto outer = [&n](double x0) {
    n.point[0] = x0;
    return n.level(1);
  };
  CubatureResult r = adaptive(outer, a, b, opt);
  r.evaluations = n.evaluations;
  r.converged = r.converged && n.converged;
  return r;
}

}  // namespace nslife::kernels
