#include "nslife/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nslife/cli/report.hpp"
#include "nslife/errors.hpp"
#include "nslife/recurrence.hpp"

#ifndef NSLIFE_VERSION
#define NSLIFE_VERSION "0.0.0"
#endif

namespace nslife::cli {

using json = nlohmann::ordered_json;

namespace {

VortexGaussian vortex_of(const ProblemConfig& cfg) { return {cfg.d, cfg.vortex->sigma, cfg.vortex->amplitude}; }

KatoBoundState make_state(const ProblemConfig& cfg, double delta) {
  if (cfg.vortex) return exact_state(vortex_of(cfg), delta);
  return norm_state(*cfg.norms, cfg.d, delta, cfg.theta);
}

std::optional<double> data_norm_d(const ProblemConfig& cfg) {
  if (cfg.vortex) return lp_norm(vortex_of(cfg), cfg.d);
  return cfg.norms->lp(cfg.d);
}

std::string psi_linear_name(PsiLinearTerm t) { return t == PsiLinearTerm::young ? "young" : "literal"; }

LifespanCertificate certify_at(const ProblemConfig& cfg, double delta) {
  switch (cfg.mode) {
    case Mode::thm31:
      return theorem31_bound(make_state(cfg, delta), cfg.search);
    case Mode::thm41:
    case Mode::mixed_norms:
      return theorem41_bound(make_state(cfg, delta), cfg.search);
    case Mode::thm41_explicit: {
      const NormBundle nb = cfg.vortex ? norm_bundle(vortex_of(cfg), {static_cast<double>(cfg.d)}, cfg.theta) : *cfg.norms;
      return theorem41_explicit(nb, cfg.d, delta, cfg.theta);
    }
    case Mode::global_test: {
      const auto nd = data_norm_d(cfg);
      if (!nd) throw UnavailableBound("global_test needs ||a||_d (data.norms.lp_norms[\"" + std::to_string(cfg.d) + "\"])");
      return global_certificate(*nd, cfg.d, delta);
    }
    case Mode::forced: {
      const auto [f1, f2] = cfg.force->resolve(cfg.d, delta);
      return forced_lifespan(make_state(cfg, delta), f1, f2, cfg.force->kernel, cfg.search);
    }
    case Mode::abstract_parabolic:
      break;
  }
  throw DomainError("certify_at: mode has no lifespan certificate");
}

LifespanCertificate certify(const ProblemConfig& cfg) {
  if (cfg.delta) return certify_at(cfg, *cfg.delta);
  return optimize_delta([&](double dl) { return certify_at(cfg, dl); }, cfg.delta_grid);
}

double inter(const LifespanCertificate& c, const char* key) {
  auto it = c.intermediate.find(key);
  return it == c.intermediate.end() ? 0.0 : it->second;
}

// Feasibility of the producing inequality at T, evaluated afresh.
bool feasible_at(const ProblemConfig& cfg, const LifespanCertificate& cert, double T) {
  const KatoBoundState st = make_state(cfg, cert.delta_used);
  const double k0 = st.k0(T) + inter(cert, "force_k0");
  const double k1 = st.k0_prime(T) + inter(cert, "force_k0_prime");
  if (cert.theorem == "thm41") return std::max(k0, k1) <= st.constants.threshold();
  const double a1 = std::max(k0, 1e-300);
  const double a2 = std::max(k1, 1e-300);
  if (!std::isfinite(a1) || !std::isfinite(a2)) return false;
  const auto b = coupled_bound({a1, a2, st.constants.j1, st.constants.j2, a1 + cfg.search.margin, a2 + cfg.search.margin});
  return b.ok() && std::min(b.value().x_bound - a1, b.value().y_bound - a2) - cfg.search.margin >= 0.0;
}

std::vector<ReplayCheck> certificate_checks(const ProblemConfig& cfg, const LifespanCertificate& cert) {
  std::vector<ReplayCheck> checks = replay(cert);
  const bool searched = cert.theorem == "thm41" || cert.theorem == "thm31";
  if (searched && cert.certified && std::isfinite(cert.t0) && cert.t0 < cfg.search.t_max && !cert.non_monotone) {
    const double above = cert.t0 * (1.0 + 10.0 * cfg.search.rel_tol);
    const bool bad = !feasible_at(cfg, cert, above);
    checks.push_back({"infeasible at t0 (1 + 10 rel_tol)", above - cert.t0, bad});
  }
  return checks;
}

json mixed_norm_result(const ProblemConfig& cfg, const LifespanCertificate& cert, std::vector<ReplayCheck>& checks) {
  json res;
  res["certificate"] = certificate_json(cert);
  if (!cert.certified) return res;
  const auto nd = data_norm_d(cfg);
  if (!nd) throw UnavailableBound("mixed_norms needs ||a||_d (data.norms.lp_norms[\"" + std::to_string(cfg.d) + "\"])");
  const SolutionNormInputs in{cert.iterate_bound, cert.iterate_bound, *nd};
  res["inputs"] = {{"k_sup", number(in.k_sup)}, {"k_prime_sup", number(in.k_prime_sup)}, {"a_d_norm", number(in.a_d_norm)}};
  res["psi_linear"] = psi_linear_name(cfg.psi_linear);
  QProfile psi;
  json prof = json::array();
  bool psi_ok = true;
  bool nu_ok = true;
  for (double q : cfg.q_grid) {
    json e;
    e["q"] = number(q);
    const ThetaExponents th(cfg.d, q, cert.delta_used);
    json thetas = json::array();
    for (int k = 1; k <= 7; ++k) thetas.push_back(number(th.theta(k)));
    e["theta"] = thetas;
    const double p = psi_bound(cfg.d, q, cert.delta_used, in, cfg.psi_linear);
    e["psi"] = number(p);
    psi_ok = psi_ok && std::isfinite(p) && p > 0.0;
    psi.emplace_back(q, p);
    try {
      const double n = nu_bound(cfg.d, q, cert.delta_used, in);
      e["nu"] = number(n);
      nu_ok = nu_ok && std::isfinite(n) && n > 0.0;
    } catch (const InfeasibleExponent& ex) {
      e["nu"] = nullptr;
      e["nu_requires"] = ex.constraint();
    }
    prof.push_back(e);
  }
  res["profile"] = prof;
  const double gl = grand_lebesgue_norm(psi, psi);
  res["grand_lebesgue_self"] = number(gl);
  checks.push_back({"psi(q) finite and > 0 on the q grid", 0.0, psi_ok});
  checks.push_back({"nu(q) finite and > 0 where the exponents allow", 0.0, nu_ok});
  checks.push_back({"grand Lebesgue norm of psi against itself = 1", gl - 1.0, gl == 1.0});
  return res;
}

json parabolic_result(const ProblemConfig& cfg, std::vector<ReplayCheck>& checks) {
  const AbstractParabolicProblem& p = *cfg.abstract_parabolic;
  const AbstractParabolicResult r = abstract_parabolic_lifespan(p, cfg.parabolic_margin);
  json res = {{"t", number(r.t)},
              {"t3", number(r.t3)},
              {"t4", number(r.t4)},
              {"limiting", r.limiting},
              {"ball_term", number(r.ball_term)},
              {"contraction", number(r.contraction)},
              {"margin", number(r.margin)}};
  checks.push_back({"T > 0", r.t, r.t > 0.0});
  checks.push_back({"T <= T1", p.t1 - r.t, r.t <= p.t1});
  checks.push_back({"T <= T2", p.t2 - r.t, r.t <= p.t2});
  checks.push_back({"2 K1 C T^(1-gamma)/(1-gamma) < alpha", p.alpha - 2.0 * r.ball_term, 2.0 * r.ball_term < p.alpha});
  checks.push_back({"2 K2 C T^(1-gamma)/(1-gamma) <= 1", 0.5 - r.contraction, r.contraction <= 0.5});
  return res;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string margin_text(double m) {
  std::ostringstream os;
  os.precision(6);
  os << m;
  return os.str();
}

json without_fingerprint(json j) {
  j.erase("fingerprint");
  return j;
}

}  // namespace

Report build_report(const ProblemConfig& cfg) {
  json report;
  report["tool"] = "nslife";
  report["version"] = NSLIFE_VERSION;
  report["config"] = to_json(cfg);
  const double delta_c = cfg.delta ? *cfg.delta : kDelta0;
  report["constants"] = constants_json(composite_constants(cfg.d, delta_c));

  std::vector<ReplayCheck> checks;
  bool ok = false;
  try {
    if (cfg.mode == Mode::abstract_parabolic) {
      report["result"] = parabolic_result(cfg, checks);
      ok = true;
    } else {
      const LifespanCertificate cert = certify(cfg);
      checks = certificate_checks(cfg, cert);
      if (cfg.mode == Mode::mixed_norms) {
        report["result"] = mixed_norm_result(cfg, cert, checks);
      } else {
        report["result"] = {{"certificate", certificate_json(cert)}};
      }
      ok = cert.certified;
    }
  } catch (const InfeasibleExponent& e) {
    report["result"] = {{"error", e.what()}, {"constraint", e.constraint()}};
    ok = false;
  } catch (const UnavailableBound& e) {
    report["result"] = {{"error", e.what()}};
    ok = false;
  }
  bool all_pass = !checks.empty();
  for (const auto& c : checks) all_pass = all_pass && c.pass;
  report["verification"] = {{"checks", checks_json(checks)}, {"all_pass", all_pass}};
  Report out;
  out.exit_code = ok && all_pass ? kExitCertified : kExitInfeasible;
  report["status"] = out.exit_code == kExitCertified ? "certified" : "not certified";
  report["exit_code"] = out.exit_code;
  report["fingerprint"] = fingerprint(canonical_dump(report));
  out.json = std::move(report);
  return out;
}

int run(const std::string& config_path, const std::string& out_path, const RunFlags& flags, std::ostream& out,
        std::ostream& err) {
  Report r;
  try {
    const ProblemConfig cfg = load_config(config_path, flags.mode);
    if (flags.verbose) {
      print_constant_table(composite_constants(cfg.d, cfg.delta ? *cfg.delta : kDelta0), err);
    }
    r = build_report(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return kExitInputError;
  }
  const std::string bytes = canonical_dump(r.json);
  if (out_path.empty()) {
    out << bytes;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitInputError;
    }
    f << bytes;
    out << summary_text(r.json);
  }
  if (flags.verbose) {
    const json& res = r.json["result"];
    if (res.contains("certificate")) {
      for (const auto& n : res["certificate"]["notes"]) err << "note: " << n.get<std::string>() << "\n";
    }
  }
  return r.exit_code;
}

int print_constants(int d, double delta, std::ostream& out, std::ostream& err) {
  try {
    print_constant_table(composite_constants(d, delta), out);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitCertified;
}

int verify(const std::string& report_path, std::ostream& out, std::ostream& err) {
  json stored;
  ProblemConfig cfg;
  try {
    stored = read_json_file(report_path);
    if (!stored.is_object() || !stored.contains("config") || !stored.contains("fingerprint")) {
      throw ConfigError("'" + report_path + "' is not a report");
    }
    cfg = parse_config(stored["config"].dump());
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  bool ok = true;
  auto line = [&](bool pass, const std::string& what) {
    out << (pass ? "PASS " : "FAIL ") << what << "\n";
    ok = ok && pass;
  };

  const std::string fp = fingerprint(canonical_dump(without_fingerprint(stored)));
  line(fp == stored["fingerprint"].get<std::string>(), "fingerprint matches report contents");

  const json& res = stored["result"];
  if (res.contains("certificate")) {
    const LifespanCertificate cert = certificate_from_json(res["certificate"]);
    const std::vector<ReplayCheck> checks = replay(cert);
    for (const auto& c : checks) {
      if (cert.certified || c.name == "certified t0 > 0") {
        line(c.pass || !cert.certified, "replay: " + c.name + " (margin " + margin_text(c.margin) + ")");
      }
    }
  }

  try {
    const Report again = build_report(cfg);
    line(canonical_dump(again.json) == canonical_dump(stored), "recomputed report is byte-identical");
  } catch (const std::exception& e) {
    line(false, std::string("recomputation failed: ") + e.what());
  }
  return ok ? kExitCertified : kExitInfeasible;
}

}  // namespace nslife::cli
