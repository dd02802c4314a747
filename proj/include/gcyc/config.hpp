#pragma once

#include "gcyc/scenario.hpp"

#include <filesystem>
#include <string>

namespace gcyc {

/// Builds a Scenario from a JSON scenario document (see docs/scenario-format.md).
/// Expressions are parsed and bound at load time; constant ranges and
/// dimensions are validated. Certification is not run. Throws ConfigError
/// carrying the offending field path.
Scenario load_scenario(const std::string& document, const std::string& fallback_id = "scenario");

Scenario load_scenario_file(const std::filesystem::path& path);

}  // namespace gcyc
