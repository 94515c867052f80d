#include "robinson/report.hpp"

#include <cstdio>

namespace robinson {

namespace {

// fixed-format float text for the CSV projection
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string pointText(const Point& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ';';
    out += num(p[i]);
  }
  return out;
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

nlohmann::ordered_json reportToJson(const CheckReport& rep) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["manifold"] = rep.spec_name;
  j["seed"] = rep.seed;
  j["jet_order"] = rep.jet_order;
  j["tol_abs"] = rep.tol_abs;
  j["tol_rel"] = rep.tol_rel;
  j["not_applicable"] = rep.not_applicable;
  j["all_pass"] = rep.allPass();
  j["worst_residual"] = rep.worstResidual();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckRecord& r : rep.records) {
    nlohmann::ordered_json c;
    c["label"] = r.label;
    c["ref"] = r.ref;
    c["point"] = r.point;
    c["residual"] = r.residual;
    c["scale"] = r.scale;
    c["pass"] = r.pass;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j;
}

nlohmann::ordered_json reportsToJson(const std::vector<CheckReport>& reps) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckReport& r : reps) arr.push_back(reportToJson(r));
  j["reports"] = std::move(arr);
  return j;
}

std::string jsonText(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string reportsToCsv(const std::vector<CheckReport>& reps) {
  std::string out = "suite,label,ref,point,residual,scale,pass\n";
  for (const CheckReport& rep : reps)
    for (const CheckRecord& r : rep.records) {
      out += csvField(rep.suite);
      out += ',';
      out += csvField(r.label);
      out += ',';
      out += csvField(r.ref);
      out += ',';
      out += csvField(pointText(r.point));
      out += ',';
      out += num(r.residual);
      out += ',';
      out += num(r.scale);
      out += ',';
      out += r.pass ? "true" : "false";
      out += '\n';
    }
  return out;
}

}  // namespace robinson
