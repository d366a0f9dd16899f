#pragma once

#include <string>

#include <json.hpp>

#include "crp/adversary.hpp"
#include "crp/core.hpp"

namespace crp {

Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

/// Not-offered prices serialize as the string "inf".
Pricing pricing_from_json(const nlohmann::json& j, std::size_t n_items);
nlohmann::json pricing_to_json(const Pricing& p);

/// A coupling is a JSON array of {"mass": "num/den", "values": ["num/den", ...]}.
Coupling coupling_from_json(const nlohmann::json& j, std::size_t n_items);
nlohmann::json coupling_to_json(const Coupling& c);

Instance load_instance(const std::string& path);
Pricing load_pricing(const std::string& path, std::size_t n_items);
Coupling load_coupling(const std::string& path, std::size_t n_items);
nlohmann::json load_json(const std::string& path);

/// FNV-1a 64-bit digest over the given file contents, for report provenance.
std::string digest_files(const std::vector<std::string>& paths);

}  // namespace crp
