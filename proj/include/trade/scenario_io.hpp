#pragma once

// Scenario files. The JSON schema is documented in README.md.

#include <filesystem>
#include <string>
#include <vector>

#include "trade/simulator.hpp"

namespace trade {

inline constexpr int kScenarioSchemaVersion = 1;

struct LoadedScenario {
  ScenarioSpec spec;
  std::vector<std::string> service_names;
  std::vector<std::string> node_names;
  std::vector<std::string> request_type_names;
};

/// Parses and validates. Throws ValidationError with a field path.
LoadedScenario parse_scenario(const std::string& json_text);
LoadedScenario load_scenario(const std::filesystem::path& path);

/// Reads a whole file; a missing file is a ValidationError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace trade
