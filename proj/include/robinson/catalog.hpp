#pragma once

// Built-in manifold catalog and JSON (de)serialization of ManifoldSpec.
// Every catalog entry stores expression-backed fields so a spec can be
// written to JSON and reloaded bit-for-bit.

#include <map>
#include <string>

#include "robinson/frame.hpp"

#include "json.hpp"

namespace robinson {

struct CatalogError : std::runtime_error {
  explicit CatalogError(const std::string& msg) : std::runtime_error(msg) {}
};

using Params = std::map<std::string, std::string>;

// Known names: flat4, heis_fefferman, warped_heis, bundle_general.
// Params: m (heis/warped/bundle), f (warped warp factor expression),
// P/Q/h{ij}/A{i}/B{i} (bundle coefficient expressions).
ManifoldSpec getCatalog(const std::string& name, const Params& params = {});

std::vector<std::string> catalogNames();

// "name" or "name:k=v,k=v"
ManifoldSpec parseManifoldArg(const std::string& arg);

nlohmann::json specToJson(const ManifoldSpec& spec);
ManifoldSpec specFromJson(const nlohmann::json& j);

ManifoldSpec loadSpecFile(const std::string& path);
void saveSpecFile(const ManifoldSpec& spec, const std::string& path);

}  // namespace robinson
