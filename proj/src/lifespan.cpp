#include "nslife/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nslife/errors.hpp"
#include "nslife/recurrence.hpp"

namespace nslife {
namespace {

// Replaces a zero coefficient so the strictly-positive recurrence lemmas
// apply; the recurrence inequality stays true for any larger alpha.
constexpr double kTinyAlpha = 1e-300;
// Closed-form inversions back off by this factor so that re-evaluating the
// bound at t0 cannot exceed the threshold through rounding.
constexpr double kBackoff = 1.0 - 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_delta(double delta, const char* fn) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw DomainError(std::string(fn) + ": delta must lie in (0, 1), got " + num(delta));
  }
}

void add_constant_notes(LifespanCertificate& cert, const ConstantSet& c) {
  for (const auto& n : c.notes) cert.notes.push_back(n);
}

struct NormSources {
  std::optional<double> theta;
  std::optional<double> norm_theta;
  std::optional<double> norm_d;
  std::optional<double> grad;
};

NormSources sources(const NormBundle& norms, int d, std::optional<double> theta) {
  NormSources s;
  if (theta && norms.norm_d_plus_theta) {
    s.theta = theta;
    s.norm_theta = norms.norm_d_plus_theta;
  } else if (!theta && norms.theta && norms.norm_d_plus_theta) {
    s.theta = norms.theta;
    s.norm_theta = norms.norm_d_plus_theta;
  }
  s.norm_d = norms.lp(static_cast<double>(d));
  s.grad = norms.grad_d_norm;
  return s;
}

// Smallest valid K0 bound at T, or infinity when none applies.
double k0_norm_bound(const NormBundle& norms, const NormSources& s, int d, double delta,
                     const ConstantSet& c, double T) {
  double best = kInfinity;
  if (s.theta) {
    const double th = *s.theta;
    if (literal_k0_bound_valid(d, delta, th, T)) {
      best = std::min(best, k0_bound_from_norms(norms, d, delta, th, T));
    }
    if (young_k0_bound_available(d, delta, th) && std::isfinite(T)) {
      best = std::min(best, k0_young_bound_from_norms(norms, d, delta, th, T));
    }
  }
  if (s.norm_d) best = std::min(best, c.s1 * *s.norm_d);
  return best;
}

double k0_prime_norm_bound(const NormBundle& norms, const NormSources& s, const ConstantSet& c, double T) {
  double best = kInfinity;
  if (s.grad && std::isfinite(T)) best = std::min(best, k0_prime_bound_from_norms(norms, T));
  if (s.grad && *s.grad == 0.0) best = 0.0;
  if (s.norm_d) best = std::min(best, c.s2 * *s.norm_d);
  return best;
}

}  // namespace

KatoBoundState exact_state(const VortexGaussian& a, double delta) {
  require_delta(delta, "exact_state");
  KatoBoundState st;
  st.d = a.d();
  st.delta = delta;
  st.constants = composite_constants(a.d(), delta);
  const SupResult peak = k0_peak(a, delta);
  const double c_d = unit_grad_norm(a.d());
  const SupResult peak_prime = k0_prime_peak(a, c_d);
  st.k0.eval = [a, delta, peak](double T) {
    return sup_up_to([&](double t) { return k0_profile(a, delta, t); }, peak, T);
  };
  st.k0.finite_limit = true;
  st.k0.description = "exact sup_t t^((1-delta)/2) ||e^(t Laplacian) a||_(d/delta), peak at t=" +
                      num(peak.t_star);
  st.k0_prime.eval = [a, c_d, peak_prime](double T) {
    return sup_up_to([&](double t) { return k0_prime_profile(a, t, c_d); }, peak_prime, T);
  };
  st.k0_prime.finite_limit = true;
  st.k0_prime.description = "exact sup_t t^(1/2) ||grad e^(t Laplacian) a||_d, peak at t=" +
                            num(peak_prime.t_star);
  return st;
}

KatoBoundState norm_state(const NormBundle& norms, int d, double delta, std::optional<double> theta) {
  require_delta(delta, "norm_state");
  KatoBoundState st;
  st.d = d;
  st.delta = delta;
  st.constants = composite_constants(d, delta);
  const NormSources s = sources(norms, d, theta);
  if (!s.theta && !s.norm_d) {
    throw UnavailableBound("norm_state: K0 needs ||a||_{d+theta} or ||a||_d");
  }
  if (!s.grad && !s.norm_d) {
    throw UnavailableBound("norm_state: K0' needs ||grad a||_d or ||a||_d");
  }
  const ConstantSet& c = st.constants;
  st.k0.eval = [norms, s, d, delta, c](double T) { return k0_norm_bound(norms, s, d, delta, c, T); };
  st.k0.finite_limit = s.norm_d.has_value();
  st.k0.description = "min of valid norm bounds on K0(T)";
  st.k0_prime.eval = [norms, s, c](double T) { return k0_prime_norm_bound(norms, s, c, T); };
  st.k0_prime.finite_limit = s.norm_d.has_value() || (s.grad && *s.grad == 0.0);
  st.k0_prime.description = "min(sqrt(T) ||grad a||_d, S2 ||a||_d)";
  return st;
}

SearchResult largest_feasible(const FeasibilityOracle& oracle, bool try_infinity, const SearchOptions& opt) {
  if (!(opt.t_min > 0.0) || !(opt.t_min < opt.t_max) || opt.scan_points < 2) {
    throw DomainError("largest_feasible: invalid search range");
  }
  SearchResult res;
  if (try_infinity) {
    const Feasibility f = oracle(kInfinity);
    if (f.ok) {
      res.t0 = kInfinity;
      return res;
    }
  }
  const int n = opt.scan_points;
  const double u_lo = std::log(opt.t_min);
  const double du = (std::log(opt.t_max) - u_lo) / (n - 1);
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = (i == n - 1) ? opt.t_max : std::exp(u_lo + du * i);

  int first_bad = -1;
  std::string failure;
  for (int i = 0; i < n; ++i) {
    const Feasibility f = oracle(grid[static_cast<std::size_t>(i)]);
    if (first_bad < 0 && !f.ok) {
      first_bad = i;
      failure = f.failed;
    } else if (first_bad >= 0 && f.ok) {
      res.non_monotone = true;
    }
  }
  if (first_bad < 0) {
    res.t0 = opt.t_max;
    res.range_end = true;
    return res;
  }
  double lo = 0.0;
  double hi = grid[static_cast<std::size_t>(first_bad)];
  if (first_bad == 0) {
    // Walk down by decades towards the smallest normal double.
    for (double t = opt.t_min * 0.1; t > 1e-300; t *= 0.1) {
      if (oracle(t).ok) {
        lo = t;
        res.below_range = true;
        break;
      }
      hi = t;
    }
    if (lo == 0.0) {
      res.t0 = 0.0;
      res.first_infeasible = hi;
      res.failure = failure;
      return res;
    }
  } else {
    lo = grid[static_cast<std::size_t>(first_bad - 1)];
  }
  for (int it = 0; it < opt.max_iter && hi > lo * (1.0 + opt.rel_tol); ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    const Feasibility f = oracle(mid);
    if (f.ok) {
      lo = mid;
    } else {
      hi = mid;
      failure = f.failed;
    }
    res.iterations = it + 1;
  }
  res.t0 = lo;
  res.first_infeasible = hi;
  res.failure = failure;
  return res;
}

LifespanCertificate theorem41_bound(const KatoBoundState& state, const SearchOptions& opt) {
  const ConstantSet& c = state.constants;
  const double thr = c.threshold();
  const FeasibilityOracle oracle = [&](double T) {
    const double k = std::max(state.k0(T), state.k0_prime(T));
    Feasibility f;
    f.margin = thr - k;
    f.ok = f.margin >= 0.0;
    if (!f.ok) f.failed = "max(K0(T), K0'(T)) <= 3/(16 J)";
    return f;
  };
  const SearchResult sr =
      largest_feasible(oracle, state.k0.finite_limit && state.k0_prime.finite_limit, opt);

  LifespanCertificate cert;
  cert.theorem = "thm41";
  cert.d = state.d;
  cert.delta_used = state.delta;
  cert.t0 = sr.t0;
  cert.threshold = thr;
  cert.non_monotone = sr.non_monotone;
  cert.iterate_bound = c.iterate_bound();
  cert.intermediate["j"] = c.j;
  cert.intermediate["j_bar"] = c.j_bar;
  cert.intermediate["threshold"] = thr;
  add_constant_notes(cert, c);
  cert.notes.push_back("K0: " + state.k0.description);
  cert.notes.push_back("K0': " + state.k0_prime.description);
  if (sr.t0 > 0.0) {
    const double k0v = state.k0(sr.t0);
    const double k1v = state.k0_prime(sr.t0);
    const double kmax = std::max(k0v, k1v);
    cert.intermediate["k0"] = k0v;
    cert.intermediate["k0_prime"] = k1v;
    cert.intermediate["k_max"] = kmax;
    // Scalar fixed-point bound with the dominating alpha = threshold.
    const Checked<double> z = fixed_point_bound({thr, 0.0, c.j, kmax});
    if (z) {
      cert.intermediate["fixed_point_z"] = z.value();
      cert.certified = true;
    } else {
      cert.failure = "fixed-point hypothesis " + z.failure().condition + " failed";
    }
  } else {
    cert.failure = sr.failure.empty() ? "no feasible T in the search range" : sr.failure;
    cert.notes.push_back("infeasible already at T=" + num(opt.t_min));
  }
  if (sr.range_end) cert.notes.push_back("feasible up to the search range end T=" + num(opt.t_max));
  if (sr.below_range) cert.notes.push_back("search extended below T=" + num(opt.t_min));
  if (sr.non_monotone) cert.notes.push_back("feasibility was non-monotone on the scan; largest feasible prefix certified");
  return cert;
}

LifespanCertificate theorem31_bound(const KatoBoundState& state, const SearchOptions& opt) {
  const ConstantSet& c = state.constants;
  const FeasibilityOracle oracle = [&](double T) {
    Feasibility f;
    const double a1 = std::max(state.k0(T), kTinyAlpha);
    const double a2 = std::max(state.k0_prime(T), kTinyAlpha);
    if (!std::isfinite(a1) || !std::isfinite(a2)) {
      f.failed = "K0(T), K0'(T) finite";
      f.margin = -kInfinity;
      return f;
    }
    const Checked<CoupledBound> b = coupled_bound({a1, a2, c.j1, c.j2, a1 + opt.margin, a2 + opt.margin});
    if (!b) {
      f.failed = b.failure().condition;
      f.margin = b.failure().slack;
      return f;
    }
    f.margin = std::min(b.value().x_bound - a1, b.value().y_bound - a2) - opt.margin;
    f.ok = true;
    return f;
  };
  const SearchResult sr =
      largest_feasible(oracle, state.k0.finite_limit && state.k0_prime.finite_limit, opt);

  LifespanCertificate cert;
  cert.theorem = "thm31";
  cert.d = state.d;
  cert.delta_used = state.delta;
  cert.t0 = sr.t0;
  cert.non_monotone = sr.non_monotone;
  cert.intermediate["j1"] = c.j1;
  cert.intermediate["j2"] = c.j2;
  cert.intermediate["margin"] = opt.margin;
  add_constant_notes(cert, c);
  cert.notes.push_back("K0: " + state.k0.description);
  cert.notes.push_back("K0': " + state.k0_prime.description);
  if (sr.t0 > 0.0) {
    const double a1 = std::max(state.k0(sr.t0), kTinyAlpha);
    const double a2 = std::max(state.k0_prime(sr.t0), kTinyAlpha);
    const Checked<CoupledBound> b = coupled_bound({a1, a2, c.j1, c.j2, a1 + opt.margin, a2 + opt.margin});
    cert.intermediate["k0"] = a1;
    cert.intermediate["k0_prime"] = a2;
    cert.intermediate["s1"] = c.j1 * a2 - c.j2 * a1;
    cert.intermediate["s2"] = -(c.j1 * a2 - c.j2 * a1);
    if (b) {
      cert.intermediate["v1"] = b.value().x_bound;
      cert.intermediate["v2"] = b.value().y_bound;
      cert.iterate_bound = std::max(b.value().x_bound, b.value().y_bound);
      cert.certified = true;
    } else {
      cert.failure = "coupled hypothesis " + b.failure().condition + " failed at t0";
    }
  } else {
    cert.failure = sr.failure.empty() ? "no feasible T in the search range" : sr.failure;
  }
  if (sr.range_end) cert.notes.push_back("feasible up to the search range end T=" + num(opt.t_max));
  if (sr.below_range) cert.notes.push_back("search extended below T=" + num(opt.t_min));
  if (sr.non_monotone) cert.notes.push_back("feasibility was non-monotone on the scan; largest feasible prefix certified");
  return cert;
}

LifespanCertificate theorem41_explicit(const NormBundle& norms, int d, double delta, std::optional<double> theta) {
  require_delta(delta, "theorem41_explicit");
  const ConstantSet c = composite_constants(d, delta);
  const double thr = c.threshold();
  const NormSources s = sources(norms, d, theta);
  const double dd = d;

  LifespanCertificate cert;
  cert.theorem = "thm41-explicit";
  cert.d = d;
  cert.delta_used = delta;
  cert.threshold = thr;
  cert.iterate_bound = c.iterate_bound();
  cert.intermediate["threshold"] = thr;
  add_constant_notes(cert, c);

  bool k0_available = false;
  double t_k0 = 0.0;
  std::string k0_term = "none";
  auto take_k0 = [&](double t, const char* name) {
    k0_available = true;
    if (t > t_k0) {
      t_k0 = t;
      k0_term = name;
    }
  };
  if (s.theta) {
    const double th = *s.theta;
    const double n = *s.norm_theta;
    cert.intermediate["theta"] = th;
    cert.intermediate["norm_d_plus_theta"] = n;
    if (delta <= dd / (dd + th)) {
      const double base = thr / (std::pow(2.0, dd + th) * n);
      const double cand = n == 0.0 ? kInfinity : std::pow(base, 2.0 * dd / (th * delta)) * kBackoff;
      const double t_lit = std::min(cand, 1.0);
      cert.intermediate["t_literal"] = t_lit;
      take_k0(t_lit, "T^(theta delta/(2d)) 2^(d+theta) ||a||_(d+theta), valid for T <= 1");
      const double p = dd + th;
      const double r = 1.0 / std::min(1.0 + delta / dd - 1.0 / p, 1.0);
      const double coef = young_constant(d, r, p) * heat_kernel_norm(d, r) * n;
      const double t_young = coef == 0.0 ? kInfinity : std::pow(thr / coef, 2.0 * p / th) * kBackoff;
      cert.intermediate["t_young"] = t_young;
      take_k0(t_young, "K_BL(d; r, d+theta) M(d, r) T^(theta/(2(d+theta))) ||a||_(d+theta)");
    } else {
      cert.notes.push_back("theta-norm bound skipped: delta > d/(d+theta)");
    }
  }
  if (s.norm_d) {
    cert.intermediate["norm_d"] = *s.norm_d;
    const bool small = c.s1 * *s.norm_d <= thr;
    take_k0(small ? kInfinity : 0.0, "S1 ||a||_d");
  }
  if (!k0_available) throw UnavailableBound("theorem41_explicit: K0 needs ||a||_{d+theta} or ||a||_d");

  bool k1_available = false;
  double t_k1 = 0.0;
  std::string k1_term = "none";
  auto take_k1 = [&](double t, const char* name) {
    k1_available = true;
    if (t > t_k1) {
      t_k1 = t;
      k1_term = name;
    }
  };
  if (s.grad) {
    cert.intermediate["grad_d_norm"] = *s.grad;
    const double tg = *s.grad == 0.0 ? kInfinity : (thr / *s.grad) * (thr / *s.grad) * kBackoff;
    cert.intermediate["t_grad"] = tg;
    take_k1(tg, "sqrt(T) ||grad a||_d");
  }
  if (s.norm_d) {
    const bool small = c.s2 * *s.norm_d <= thr;
    take_k1(small ? kInfinity : 0.0, "S2 ||a||_d");
  }
  if (!k1_available) throw UnavailableBound("theorem41_explicit: K0' needs ||grad a||_d or ||a||_d");

  cert.t0 = std::min(t_k0, t_k1);
  cert.intermediate["t_k0"] = t_k0;
  cert.intermediate["t_k0_prime"] = t_k1;
  cert.notes.push_back("K0 term used: " + k0_term);
  cert.notes.push_back("K0' term used: " + k1_term);
  cert.certified = cert.t0 > 0.0;
  if (!cert.certified) cert.failure = "norms too large for every available bound";
  return cert;
}

std::vector<double> default_delta_grid(std::size_t n) {
  if (n < 2) throw DomainError("default_delta_grid: need at least 2 points");
  const std::size_t n_log = n / 4;
  const std::size_t n_lin = n - n_log;
  std::vector<double> g;
  g.reserve(n);
  for (std::size_t i = 0; i < n_log; ++i) {
    g.push_back(0.005 * std::pow(0.1 / 0.005, static_cast<double>(i) / static_cast<double>(n_log)));
  }
  for (std::size_t i = 0; i < n_lin; ++i) {
    g.push_back(n_lin == 1 ? 0.1 : 0.1 + 0.85 * static_cast<double>(i) / static_cast<double>(n_lin - 1));
  }
  return g;
}

LifespanCertificate optimize_delta(const std::function<LifespanCertificate(double)>& certifier,
                                   const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("optimize_delta: empty delta grid");
  for (double dl : grid) require_delta(dl, "optimize_delta");
  std::vector<LifespanCertificate> certs(grid.size());
  const long n = static_cast<long>(grid.size());
#if defined(NSLIFE_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      certs[k] = certifier(grid[k]);
    } catch (const std::exception& e) {
      certs[k] = LifespanCertificate{};
      certs[k].delta_used = grid[k];
      certs[k].failure = e.what();
    }
  }
  std::size_t best = grid.size();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!certs[k].certified) continue;
    if (best == grid.size() || certs[k].t0 > certs[best].t0 ||
        (certs[k].t0 == certs[best].t0 && grid[k] < grid[best])) {
      best = k;
    }
  }
  std::vector<std::pair<double, double>> profile;
  profile.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    profile.emplace_back(grid[k], certs[k].certified ? certs[k].t0 : 0.0);
  }
  LifespanCertificate out;
  if (best == grid.size()) {
    out = certs.front();
    out.t0 = 0.0;
    out.certified = false;
    out.failure = "no delta in the grid certified; first failure: " + certs.front().failure;
  } else {
    out = certs[best];
  }
  out.delta_profile = std::move(profile);
  return out;
}

double global_smallness_threshold(int d, double delta, const ConstantSet& constants) {
  if (constants.d != d || constants.delta != delta) {
    throw DomainError("global_smallness_threshold: constants were computed for a different (d, delta)");
  }
  return constants.threshold() / std::max(constants.s1, constants.s2);
}

LifespanCertificate global_certificate(double norm_d, int d, double delta) {
  if (!(norm_d >= 0.0)) throw DomainError("global_certificate: ||a||_d must be >= 0");
  const ConstantSet c = composite_constants(d, delta);
  LifespanCertificate cert;
  cert.theorem = "global";
  cert.d = d;
  cert.delta_used = delta;
  cert.threshold = c.threshold();
  cert.iterate_bound = c.iterate_bound();
  const double eps = global_smallness_threshold(d, delta, c);
  cert.intermediate["norm_d"] = norm_d;
  cert.intermediate["epsilon"] = eps;
  cert.intermediate["s1"] = c.s1;
  cert.intermediate["s2"] = c.s2;
  cert.intermediate["threshold"] = c.threshold();
  add_constant_notes(cert, c);
  if (std::max(c.s1, c.s2) * norm_d <= c.threshold()) {
    cert.t0 = kInfinity;
    cert.certified = true;
  } else {
    cert.failure = "||a||_d = " + num(norm_d) + " exceeds the smallness threshold " + num(eps);
  }
  return cert;
}

namespace {

double get(const LifespanCertificate& cert, const std::string& key) {
  auto it = cert.intermediate.find(key);
  if (it == cert.intermediate.end()) return std::numeric_limits<double>::quiet_NaN();
  return it->second;
}

ReplayCheck check(std::string name, double margin) {
  return {std::move(name), margin, margin >= 0.0};
}

}  // namespace

std::vector<ReplayCheck> replay(const LifespanCertificate& cert) {
  std::vector<ReplayCheck> out;
  out.push_back({"certified t0 > 0", cert.t0, cert.certified && cert.t0 > 0.0});
  if (!cert.certified) return out;
  const ConstantSet c = composite_constants(cert.d, cert.delta_used);
  const double thr = c.threshold();
  if (cert.theorem == "thm41") {
    out.push_back({"threshold 3/(16 J) reproduces", 0.0, thr == cert.threshold});
    const double kmax = std::max(get(cert, "k0"), get(cert, "k0_prime"));
    out.push_back(check("max(K0(t0), K0'(t0)) <= 3/(16 J)", thr - kmax));
    const Checked<double> z = fixed_point_bound({thr, 0.0, c.j, kmax});
    const double zval = z ? z.value() : std::numeric_limits<double>::quiet_NaN();
    out.push_back({"Z(3/(16 J), 0, J) = 3/(4 J)", std::abs(zval - c.iterate_bound()),
                   z.ok() && std::abs(zval - c.iterate_bound()) <= 1e-12 * c.iterate_bound()});
  } else if (cert.theorem == "thm31") {
    const double a1 = get(cert, "k0");
    const double a2 = get(cert, "k0_prime");
    const double margin = get(cert, "margin");
    out.push_back({"J1, J2 reproduce", 0.0, c.j1 == get(cert, "j1") && c.j2 == get(cert, "j2")});
    const Checked<CoupledBound> b = coupled_bound({a1, a2, c.j1, c.j2, a1 + margin, a2 + margin});
    out.push_back({"coupled fixed-point hypotheses", b ? 0.0 : b.failure().slack, b.ok()});
    if (b) {
      out.push_back(check("K0(t0) + margin < Z(K0, s1, J2)", b.value().x_bound - a1 - margin));
      out.push_back(check("K0'(t0) + margin < Z(K0', s2, J1)", b.value().y_bound - a2 - margin));
    }
  } else if (cert.theorem == "thm41-explicit") {
    NormBundle nb;
    std::optional<double> theta;
    if (cert.intermediate.count("theta")) {
      theta = get(cert, "theta");
      nb.theta = theta;
      nb.norm_d_plus_theta = get(cert, "norm_d_plus_theta");
    }
    if (cert.intermediate.count("norm_d")) nb.lp_norms[static_cast<double>(cert.d)] = get(cert, "norm_d");
    if (cert.intermediate.count("grad_d_norm")) nb.grad_d_norm = get(cert, "grad_d_norm");
    const NormSources s = sources(nb, cert.d, theta);
    out.push_back(check("K0 bound at t0 <= 3/(16 J)", thr - k0_norm_bound(nb, s, cert.d, cert.delta_used, c, cert.t0)));
    out.push_back(check("K0' bound at t0 <= 3/(16 J)", thr - k0_prime_norm_bound(nb, s, c, cert.t0)));
  } else if (cert.theorem == "global") {
    const double nd = get(cert, "norm_d");
    out.push_back(check("S1 ||a||_d <= 3/(16 J)", thr - c.s1 * nd));
    out.push_back(check("S2 ||a||_d <= 3/(16 J)", thr - c.s2 * nd));
  } else {
    out.push_back({"known theorem tag", 0.0, false});
  }
  return out;
}

}  // namespace nslife
