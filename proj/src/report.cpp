#include "tspbound/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace tspbound {

using nlohmann::json;

MethodRecord make_method_record(const BoundResult& bound) {
  MethodRecord rec;
  rec.method = to_string(bound.method);
  rec.raw = bound.raw;
  rec.rounded = bound.rounded;
  rec.status = to_string(bound.report.status);
  rec.iterations = bound.report.iterations;
  rec.wall_seconds = bound.wall_seconds;
  return rec;
}

std::string RunReport::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["tool_version"] = tool_version;
  j["command"] = command;
  j["config"] = config_echo;
  j["instances"] = json::array();
  for (const auto& inst : instances) {
    json ji;
    ji["instance"] = inst.instance;
    ji["n"] = inst.n;
    ji["methods"] = json::array();
    for (const auto& m : inst.methods) {
      json jm;
      jm["method"] = m.method;
      jm["raw"] = m.raw;
      jm["rounded"] = m.rounded;
      jm["status"] = m.status;
      jm["iterations"] = m.iterations;
      jm["wall_seconds"] = m.wall_seconds;
      if (m.matches_reference.has_value()) jm["matches_reference"] = *m.matches_reference;
      ji["methods"].push_back(jm);
    }
    if (inst.brute_force_optimum.has_value())
      ji["brute_force_optimum"] = *inst.brute_force_optimum;
    if (inst.minor_inequality_pass.has_value())
      ji["minor_inequality_pass"] = *inst.minor_inequality_pass;
    j["instances"].push_back(ji);
  }
  return j.dump(2);
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "instance,n,method,raw,rounded,status,iterations,wall_seconds\n";
  for (const auto& inst : instances)
    for (const auto& m : inst.methods) {
      os << inst.instance << "," << inst.n << "," << m.method << ","
         << std::setprecision(12) << m.raw << "," << m.rounded << "," << m.status << ","
         << m.iterations << "," << std::setprecision(6) << m.wall_seconds << "\n";
    }
  return os.str();
}

std::string RunReport::to_table(bool show_raw) const {
  // column order mirrors the published comparison: cvetkovic, new-sdp,
  // held-karp, then the exact optimum when available
  std::ostringstream os;
  auto cell = [&](const InstanceRecord& inst, const std::string& method) -> std::string {
    for (const auto& m : inst.methods)
      if (m.method == method) {
        std::ostringstream c;
        const double value = show_raw ? m.raw : m.rounded;
        if (!show_raw && std::abs(value - std::round(value)) < 1e-9)
          c << static_cast<long long>(std::llround(value));
        else
          c << std::fixed << std::setprecision(3) << value;
        if (m.status != "optimal") c << "*";
        if (m.matches_reference.has_value()) c << (*m.matches_reference ? " ok" : " MISMATCH");
        return c.str();
      }
    return "-";
  };
  bool any_starred = false;
  for (const auto& inst : instances)
    for (const auto& m : inst.methods) any_starred = any_starred || m.status != "optimal";
  os << std::left << std::setw(12) << "instance" << std::setw(6) << "n" << std::setw(16)
     << "cvetkovic" << std::setw(16) << "new-sdp" << std::setw(16) << "qap-sdp"
     << std::setw(16) << "held-karp" << std::setw(10) << "optimum" << "\n";
  for (const auto& inst : instances) {
    os << std::left << std::setw(12) << inst.instance << std::setw(6) << inst.n
       << std::setw(16) << cell(inst, "cvetkovic") << std::setw(16) << cell(inst, "new-sdp")
       << std::setw(16) << cell(inst, "qap-sdp") << std::setw(16) << cell(inst, "held-karp");
    if (inst.brute_force_optimum.has_value())
      os << std::setw(10) << *inst.brute_force_optimum;
    else
      os << std::setw(10) << "-";
    os << "\n";
  }
  if (any_starred)
    os << "* solver stopped before the optimality test; the value is the"
          " certified bound\n";
  return os.str();
}

}  // namespace tspbound
