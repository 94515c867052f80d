#pragma once

// Deterministic serialization of check reports: a canonical JSON document
// (stable key order, shortest round-trip number text) and a flat CSV
// projection with schema suite,label,ref,point,residual,scale,pass.

#include "robinson/identities.hpp"
#include "json.hpp"

namespace robinson {

nlohmann::ordered_json reportToJson(const CheckReport& rep);
nlohmann::ordered_json reportsToJson(const std::vector<CheckReport>& reps);

// canonical text form: two-space indent plus trailing newline
std::string jsonText(const nlohmann::ordered_json& j);

std::string reportsToCsv(const std::vector<CheckReport>& reps);

}  // namespace robinson
