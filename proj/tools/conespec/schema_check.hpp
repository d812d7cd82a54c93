#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

// Subset of JSON Schema used by the shipped report schemas: type, enum,
// required, properties, items, minimum.
std::vector<std::string> schema_errors(const nlohmann::json& schema, const nlohmann::json& value,
                                       const std::string& path = "$");

// Schema text for a subcommand, embedded at build time; empty if unknown.
const char* embedded_schema(const std::string& command);

}  // namespace cli
