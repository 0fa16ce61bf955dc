#include "nslife/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nslife::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ConfigError("field '" + where + "': " + msg);
}

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

const json& required(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::string path(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

double get_number(const json& obj, const std::string& key, const std::string& where) {
  return number_from_json(required(obj, key, where), path(where, key));
}

double positive(const json& obj, const std::string& key, const std::string& where) {
  const double v = get_number(obj, key, where);
  if (!(v > 0.0) || !std::isfinite(v)) fail(path(where, key), "must be a finite number > 0");
  return v;
}

double in_unit(double v, const std::string& where) {
  if (!(v > 0.0) || !(v < 1.0)) fail(where, "must lie in (0, 1)");
  return v;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

ForceNorm force_norm(const json& j, const std::string& where, bool& matched) {
  if (!j.is_object()) fail(where, "must be an object");
  only_keys(j, where, {"theta", "lambda", "value"});
  ForceNorm f;
  f.theta = get_number(j, "theta", where);
  if (!(f.theta >= 1.0) || !std::isfinite(f.theta)) fail(path(where, "theta"), "must be finite and >= 1");
  f.value = get_number(j, "value", where);
  if (!(f.value >= 0.0) || !std::isfinite(f.value)) fail(path(where, "value"), "must be finite and >= 0");
  matched = !j.contains("lambda");
  if (!matched) {
    f.lambda = get_number(j, "lambda", where);
    if (!(f.lambda > -1.0) || !(f.lambda < 0.0)) fail(path(where, "lambda"), "must lie in (-1, 0)");
  }
  return f;
}

json force_json(const ForceNorm& f, bool matched) {
  json j;
  j["theta"] = number(f.theta);
  if (!matched) j["lambda"] = number(f.lambda);
  j["value"] = number(f.value);
  return j;
}

}  // namespace

std::pair<ForceNorm, ForceNorm> ForceSpec::resolve(int d, double delta) const {
  ForceNorm a = f1;
  ForceNorm b = f2;
  if (lambda1_matched) a.lambda = matched_lambda_k0(d, delta, a.theta, kernel);
  if (lambda2_matched) b.lambda = matched_lambda_k0_prime(d, b.theta);
  return {a, b};
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::thm31: return "thm31";
    case Mode::thm41: return "thm41";
    case Mode::thm41_explicit: return "thm41_explicit";
    case Mode::global_test: return "global_test";
    case Mode::mixed_norms: return "mixed_norms";
    case Mode::forced: return "forced";
    case Mode::abstract_parabolic: return "abstract_parabolic";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& s) {
  for (Mode m : {Mode::thm31, Mode::thm41, Mode::thm41_explicit, Mode::global_test, Mode::mixed_norms,
                 Mode::forced, Mode::abstract_parabolic}) {
    if (to_string(m) == s) return m;
  }
  throw ConfigError("field 'mode': unknown mode '" + s +
                    "' (expected thm31, thm41, thm41_explicit, global_test, mixed_norms, forced, abstract_parabolic)");
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
  return v;
}

double number_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-infinity") return -std::numeric_limits<double>::infinity();
  }
  fail(where, "must be a number (or the string \"infinity\")");
}

json to_json(const NormBundle& nb) {
  json j;
  json lp = json::object();
  for (const auto& [p, v] : nb.lp_norms) lp[json(p).dump()] = number(v);
  j["lp_norms"] = lp;
  if (nb.grad_d_norm) j["grad_d_norm"] = number(*nb.grad_d_norm);
  if (nb.theta) j["theta"] = number(*nb.theta);
  if (nb.norm_d_plus_theta) j["norm_d_plus_theta"] = number(*nb.norm_d_plus_theta);
  return j;
}

NormBundle norm_bundle_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "must be an object");
  only_keys(j, where, {"lp_norms", "grad_d_norm", "theta", "norm_d_plus_theta"});
  NormBundle nb;
  if (j.contains("lp_norms")) {
    const json& lp = j["lp_norms"];
    if (!lp.is_object()) fail(path(where, "lp_norms"), "must be an object mapping exponent to norm");
    for (auto it = lp.begin(); it != lp.end(); ++it) {
      const std::string w = path(where, "lp_norms." + it.key());
      double p = 0.0;
      try {
        std::size_t used = 0;
        p = std::stod(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(w, "key must be a numeric exponent");
      }
      if (!(p >= 1.0)) fail(w, "exponent must be >= 1");
      const double v = number_from_json(it.value(), w);
      if (!(v >= 0.0) || !std::isfinite(v)) fail(w, "norm must be finite and >= 0");
      nb.lp_norms[p] = v;
    }
  }
  auto opt_norm = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    const double v = number_from_json(j[key], path(where, key));
    if (!(v >= 0.0) || !std::isfinite(v)) fail(path(where, key), "must be finite and >= 0");
    return v;
  };
  nb.grad_d_norm = opt_norm("grad_d_norm");
  nb.theta = opt_norm("theta");
  nb.norm_d_plus_theta = opt_norm("norm_d_plus_theta");
  if (nb.theta.has_value() != nb.norm_d_plus_theta.has_value()) {
    fail(where, "theta and norm_d_plus_theta must be given together");
  }
  if (nb.theta && !(*nb.theta > 0.0)) fail(path(where, "theta"), "must be > 0");
  return nb;
}

ProblemConfig parse_config(const std::string& text, std::optional<Mode> mode_override) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("syntax error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  only_keys(j, "", {"d", "delta", "delta_grid", "mode", "data", "theta", "q_grid", "force", "abstract_parabolic",
                    "tolerances", "options"});
  ProblemConfig c;

  const json& dj = required(j, "d", "");
  if (!dj.is_number_integer()) fail("d", "must be an integer");
  c.d = dj.get<int>();
  if (c.d < 3 || c.d > 64) fail("d", "must lie in [3, 64]");

  if (mode_override) {
    c.mode = *mode_override;
  } else {
    const json& mj = required(j, "mode", "");
    if (!mj.is_string()) fail("mode", "must be a string");
    c.mode = mode_from_string(mj.get<std::string>());
  }

  if (j.contains("delta") && j.contains("delta_grid")) fail("delta", "give either delta or delta_grid, not both");
  if (j.contains("delta")) c.delta = in_unit(get_number(j, "delta", ""), "delta");
  if (j.contains("delta_grid")) {
    const json& g = j["delta_grid"];
    if (g.is_string() && g.get<std::string>() == "default") {
      c.delta_grid = default_delta_grid();
    } else if (g.is_array() && !g.empty()) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string w = "delta_grid[" + std::to_string(i) + "]";
        c.delta_grid.push_back(in_unit(number_from_json(g[i], w), w));
      }
    } else {
      fail("delta_grid", "must be a nonempty array of numbers or \"default\"");
    }
  }
  if (!c.delta && c.delta_grid.empty()) c.delta = kDelta0;

  if (j.contains("theta")) c.theta = positive(j, "theta", "");

  if (c.mode != Mode::abstract_parabolic) {
    const json& data = required(j, "data", "");
    if (!data.is_object()) fail("data", "must be an object");
    const bool has_family = data.contains("family");
    const bool has_norms = data.contains("norms");
    if (has_family == has_norms) fail("data", "exactly one of 'family' or 'norms' is required");
    if (has_family) {
      only_keys(data, "data", {"family", "sigma", "amplitude"});
      const json& fam = data["family"];
      if (!fam.is_string() || fam.get<std::string>() != "vortex_gaussian") {
        fail("data.family", "only \"vortex_gaussian\" is supported");
      }
      VortexSpec v;
      v.sigma = positive(data, "sigma", "data");
      v.amplitude = get_number(data, "amplitude", "data");
      if (!(v.amplitude >= 0.0) || !std::isfinite(v.amplitude)) fail("data.amplitude", "must be finite and >= 0");
      c.vortex = v;
    } else {
      only_keys(data, "data", {"norms"});
      c.norms = norm_bundle_from_json(data["norms"], "data.norms");
    }
  } else if (j.contains("data")) {
    fail("data", "not used by mode abstract_parabolic");
  }

  if (j.contains("q_grid")) {
    const json& g = j["q_grid"];
    if (!g.is_array() || g.empty()) fail("q_grid", "must be a nonempty array");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string w = "q_grid[" + std::to_string(i) + "]";
      const double q = number_from_json(g[i], w);
      if (!(q >= c.d) || !std::isfinite(q)) fail(w, "must be finite and >= d");
      if (!c.q_grid.empty() && !(q > c.q_grid.back())) fail(w, "q_grid must be strictly increasing");
      c.q_grid.push_back(q);
    }
  }
  if (c.mode == Mode::mixed_norms && c.q_grid.empty()) fail("q_grid", "required by mode mixed_norms");

  if (j.contains("force")) {
    const json& f = j["force"];
    if (!f.is_object()) fail("force", "must be an object");
    only_keys(f, "force", {"f1", "f2", "kernel"});
    ForceSpec fs;
    fs.f1 = force_norm(required(f, "f1", "force"), "force.f1", fs.lambda1_matched);
    fs.f2 = force_norm(required(f, "f2", "force"), "force.f2", fs.lambda2_matched);
    if (f.contains("kernel")) {
      const json& k = f["kernel"];
      if (k == "heat") {
        fs.kernel = ForceKernel::heat;
      } else if (k == "literal") {
        fs.kernel = ForceKernel::literal;
      } else {
        fail("force.kernel", "must be \"heat\" or \"literal\"");
      }
    }
    c.force = fs;
  }
  if (c.mode == Mode::forced && !c.force) fail("force", "required by mode forced");

  if (j.contains("abstract_parabolic")) {
    const json& a = j["abstract_parabolic"];
    if (!a.is_object()) fail("abstract_parabolic", "must be an object");
    only_keys(a, "abstract_parabolic", {"gamma", "c_gamma", "alpha", "k1", "k2", "t1", "t2", "margin"});
    AbstractParabolicProblem p;
    p.gamma = in_unit(get_number(a, "gamma", "abstract_parabolic"), "abstract_parabolic.gamma");
    p.c_gamma = positive(a, "c_gamma", "abstract_parabolic");
    p.alpha = positive(a, "alpha", "abstract_parabolic");
    p.k1 = positive(a, "k1", "abstract_parabolic");
    p.k2 = positive(a, "k2", "abstract_parabolic");
    p.t1 = positive(a, "t1", "abstract_parabolic");
    p.t2 = positive(a, "t2", "abstract_parabolic");
    if (a.contains("margin")) {
      c.parabolic_margin = in_unit(get_number(a, "margin", "abstract_parabolic"), "abstract_parabolic.margin");
    }
    c.abstract_parabolic = p;
  }
  if (c.mode == Mode::abstract_parabolic && !c.abstract_parabolic) {
    fail("abstract_parabolic", "required by mode abstract_parabolic");
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail("tolerances", "must be an object");
    only_keys(t, "tolerances", {"t_min", "t_max", "scan_points", "max_iter", "rel_tol", "margin"});
    if (t.contains("t_min")) c.search.t_min = positive(t, "t_min", "tolerances");
    if (t.contains("t_max")) c.search.t_max = positive(t, "t_max", "tolerances");
    if (!(c.search.t_min < c.search.t_max)) fail("tolerances", "t_min must be < t_max");
    auto count = [&](const char* key, int lo, int hi) {
      const json& v = t[key];
      if (!v.is_number_integer() || v.get<long>() < lo || v.get<long>() > hi) {
        fail(path("tolerances", key), "must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
      return v.get<int>();
    };
    if (t.contains("scan_points")) c.search.scan_points = count("scan_points", 2, 100000);
    if (t.contains("max_iter")) c.search.max_iter = count("max_iter", 1, 1000);
    if (t.contains("rel_tol")) {
      c.search.rel_tol = in_unit(get_number(t, "rel_tol", "tolerances"), "tolerances.rel_tol");
    }
    if (t.contains("margin")) {
      c.search.margin = get_number(t, "margin", "tolerances");
      if (!(c.search.margin >= 0.0) || !std::isfinite(c.search.margin)) fail("tolerances.margin", "must be >= 0");
    }
  }

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) fail("options", "must be an object");
    only_keys(o, "options", {"psi_linear"});
    if (o.contains("psi_linear")) {
      if (o["psi_linear"] == "young") {
        c.psi_linear = PsiLinearTerm::young;
      } else if (o["psi_linear"] == "literal") {
        c.psi_linear = PsiLinearTerm::literal;
      } else {
        fail("options.psi_linear", "must be \"young\" or \"literal\"");
      }
    }
  }

  if (c.mode == Mode::thm41_explicit && c.vortex && !c.theta) {
    // Vortex norms are exact, so the extra-integrability norm can be formed.
    c.theta = 1.0;
  }
  return c;
}

ProblemConfig load_config(const std::string& file, std::optional<Mode> mode_override) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), mode_override);
}

json to_json(const ProblemConfig& c) {
  json j;
  j["d"] = c.d;
  j["mode"] = to_string(c.mode);
  if (c.delta) {
    j["delta"] = number(*c.delta);
  } else {
    json g = json::array();
    for (double v : c.delta_grid) g.push_back(number(v));
    j["delta_grid"] = g;
  }
  if (c.vortex) {
    j["data"] = {{"family", "vortex_gaussian"}, {"sigma", number(c.vortex->sigma)}, {"amplitude", number(c.vortex->amplitude)}};
  } else if (c.norms) {
    j["data"] = {{"norms", to_json(*c.norms)}};
  }
  if (c.theta) j["theta"] = number(*c.theta);
  if (!c.q_grid.empty()) {
    json g = json::array();
    for (double v : c.q_grid) g.push_back(number(v));
    j["q_grid"] = g;
  }
  if (c.force) {
    j["force"] = {{"f1", force_json(c.force->f1, c.force->lambda1_matched)},
                  {"f2", force_json(c.force->f2, c.force->lambda2_matched)},
                  {"kernel", c.force->kernel == ForceKernel::heat ? "heat" : "literal"}};
  }
  if (c.abstract_parabolic) {
    const auto& p = *c.abstract_parabolic;
    j["abstract_parabolic"] = {{"gamma", number(p.gamma)}, {"c_gamma", number(p.c_gamma)}, {"alpha", number(p.alpha)},
                               {"k1", number(p.k1)},       {"k2", number(p.k2)},           {"t1", number(p.t1)},
                               {"t2", number(p.t2)},       {"margin", number(c.parabolic_margin)}};
  }
  j["tolerances"] = {{"t_min", number(c.search.t_min)},     {"t_max", number(c.search.t_max)},
                     {"scan_points", c.search.scan_points}, {"max_iter", c.search.max_iter},
                     {"rel_tol", number(c.search.rel_tol)}, {"margin", number(c.search.margin)}};
  j["options"] = {{"psi_linear", c.psi_linear == PsiLinearTerm::young ? "young" : "literal"}};
  return j;
}

}  // namespace nslife::cli
