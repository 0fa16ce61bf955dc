#include "nslife/cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "nslife/cli/config.hpp"

namespace nslife::cli {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v, int prec = 12) {
  if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

}  // namespace

std::vector<ConstantRow> constant_rows(const ConstantSet& c) {
  std::vector<ConstantRow> rows;
  const std::string d = std::to_string(c.d);
  for (const auto& [p, v] : c.ks) {
    rows.push_back({"K_S(" + d + ", " + fmt(p) + ")", v,
                    "pi^(-1/2) d^(-1/p) ((p-1)/(d-p))^(1-1/p) [G(1+d/2) G(d) / (G(d/p) G(1+d-d/p))]^(1/d)"});
  }
  for (const auto& [p, v] : c.kr) {
    rows.push_back({"K_R(" + fmt(p) + ")", v, "cot(pi/(2 p*)), p* = max(p, p/(p-1))"});
  }
  for (const auto& [r, v] : c.m) {
    rows.push_back({"M(" + d + ", " + fmt(r) + ")", v, "2^(d/r) pi^(-d(1-1/r)/2) r^(-d/(2r))"});
  }
  for (const auto& [r, v] : c.m_prime) {
    rows.push_back({"M'(" + d + ", " + fmt(r) + ")", v, "M(d, d+r) / 2"});
  }
  rows.push_back({"r_S1", c.r_s1, "d / (d - 1 + delta)"});
  rows.push_back({"S1", c.s1, "K_BL(d; d, r_S1) M(d, r_S1)"});
  rows.push_back({"S2", c.s2, "K_BL(d; 1, d) M(d, 1) / 2"});
  rows.push_back({"S2_alt", c.s2_alt, "K_BL(d; 1, d) M(d, d^2/(d-1)) / 2"});
  rows.push_back({"J1", c.j1, "K_R(d/delta) K_R(d) sqrt(pi) G(delta/2) / G((1+delta)/2)"});
  rows.push_back({"J2", c.j2, "K_R(d)^2 G((1-delta)/2) G(delta/2) / sqrt(pi)"});
  rows.push_back({"J^(1)", c.j_up1, "9 d^2 / (2 delta^2)"});
  rows.push_back({"J^(2)", c.j_up2, "81 d^2 / (4 sqrt(pi) delta (1-delta))"});
  rows.push_back({"J", c.j, "max(J^(1), J^(2))"});
  rows.push_back({"delta0", c.delta0, "2 sqrt(pi) / (9 + 2 sqrt(pi))"});
  rows.push_back({"J_bar", c.j_bar, "C1 d^2"});
  rows.push_back({"C1", c.c1, "9 / (2 delta0^2)"});
  rows.push_back({"C2", c.c2, "3 / (16 C1)"});
  rows.push_back({"C3", c.c3, "4 C2 = 3 / (4 C1)"});
  rows.push_back({"threshold", c.threshold(), "3 / (16 J)"});
  rows.push_back({"iterate_bound", c.iterate_bound(), "3 / (4 J)"});
  return rows;
}

json constants_json(const ConstantSet& c) {
  json table = json::array();
  for (const auto& r : constant_rows(c)) {
    table.push_back({{"name", r.name}, {"value", number(r.value)}, {"formula", r.formula}});
  }
  json j;
  j["d"] = c.d;
  j["delta"] = number(c.delta);
  j["table"] = table;
  j["printed_reference"] = {{"C1", kPrintedC1}, {"C2", kPrintedC2}, {"C3", kPrintedC3}};
  j["notes"] = c.notes;
  return j;
}

void print_constant_table(const ConstantSet& c, std::ostream& os) {
  os << "constants for d = " << c.d << ", delta = " << fmt(c.delta, 17) << "\n";
  std::size_t w = 4;
  for (const auto& r : constant_rows(c)) w = std::max(w, r.name.size());
  for (const auto& r : constant_rows(c)) {
    os << "  " << std::left << std::setw(static_cast<int>(w)) << r.name << "  " << std::setw(22) << fmt(r.value, 15)
       << "  " << r.formula << "\n";
  }
  for (const auto& n : c.notes) os << "  note: " << n << "\n";
}

json certificate_json(const LifespanCertificate& cert) {
  json j;
  j["theorem"] = cert.theorem;
  j["d"] = cert.d;
  j["delta_used"] = number(cert.delta_used);
  j["t0"] = number(cert.t0);
  j["certified"] = cert.certified;
  j["iterate_bound"] = number(cert.iterate_bound);
  j["threshold"] = number(cert.threshold);
  json inter = json::object();
  for (const auto& [k, v] : cert.intermediate) inter[k] = number(v);
  j["intermediate"] = inter;
  j["notes"] = cert.notes;
  j["failure"] = cert.failure;
  j["non_monotone"] = cert.non_monotone;
  if (!cert.delta_profile.empty()) {
    json prof = json::array();
    for (const auto& [dl, t] : cert.delta_profile) prof.push_back({{"delta", number(dl)}, {"t0", number(t)}});
    j["delta_profile"] = prof;
  }
  return j;
}

LifespanCertificate certificate_from_json(const json& j) {
  try {
    LifespanCertificate c;
    c.theorem = j.at("theorem").get<std::string>();
    c.d = j.at("d").get<int>();
    c.delta_used = number_from_json(j.at("delta_used"), "delta_used");
    c.t0 = number_from_json(j.at("t0"), "t0");
    c.certified = j.at("certified").get<bool>();
    c.iterate_bound = number_from_json(j.at("iterate_bound"), "iterate_bound");
    c.threshold = number_from_json(j.at("threshold"), "threshold");
    for (auto it = j.at("intermediate").begin(); it != j.at("intermediate").end(); ++it) {
      c.intermediate[it.key()] = number_from_json(it.value(), "intermediate." + it.key());
    }
    c.notes = j.at("notes").get<std::vector<std::string>>();
    c.failure = j.at("failure").get<std::string>();
    c.non_monotone = j.at("non_monotone").get<bool>();
    if (j.contains("delta_profile")) {
      for (const auto& e : j["delta_profile"]) {
        c.delta_profile.emplace_back(number_from_json(e.at("delta"), "delta"), number_from_json(e.at("t0"), "t0"));
      }
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("certificate: ") + e.what());
  }
}

json checks_json(const std::vector<ReplayCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"margin", number(c.margin)}, {"pass", c.pass}});
  return arr;
}

std::string fingerprint(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string summary_text(const json& report) {
  std::ostringstream os;
  const json& cfg = report.at("config");
  os << "mode " << cfg.at("mode").get<std::string>() << ", d = " << cfg.at("d").get<int>() << "\n";
  os << "status: " << report.at("status").get<std::string>() << " (exit " << report.at("exit_code").get<int>()
     << ")\n";
  const json& res = report.at("result");
  if (res.contains("certificate")) {
    const json& c = res["certificate"];
    auto show = [](const json& v) { return v.is_string() ? v.get<std::string>() : fmt(v.get<double>()); };
    os << "t0 = " << show(c.at("t0")) << " at delta = " << show(c.at("delta_used")) << " (" << c.at("theorem").get<std::string>() << ")\n";
    if (!c.at("failure").get<std::string>().empty()) os << "failure: " << c["failure"].get<std::string>() << "\n";
  }
  if (res.contains("t")) os << "T = " << fmt(res["t"].get<double>()) << " limited by " << res["limiting"].get<std::string>() << "\n";
  if (res.contains("error")) os << "error: " << res["error"].get<std::string>() << "\n";
  const json& checks = report.at("verification").at("checks");
  std::size_t pass = 0;
  for (const auto& c : checks) pass += c.at("pass").get<bool>() ? 1 : 0;
  os << "verification: " << pass << "/" << checks.size() << " checks pass\n";
  for (const auto& c : checks) {
    if (!c.at("pass").get<bool>()) os << "  FAIL " << c.at("name").get<std::string>() << "\n";
  }
  os << "fingerprint " << report.at("fingerprint").get<std::string>() << "\n";
  return os.str();
}

}  // namespace nslife::cli
