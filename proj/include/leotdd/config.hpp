#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "leotdd/experiment.hpp"

namespace leotdd {

/// Every key accepted in a scenario file, as "section.key".
const std::vector<std::string>& known_config_keys();

/// Parses INI text. Overrides are "section.key=value" strings applied on top
/// of the file. Unknown keys, malformed values and range violations raise
/// ConfigError naming the key.
ScenarioConfig parse_config(const std::string& ini_text, const std::vector<std::string>& overrides = {});

/// Reads a file; an unreadable path raises std::ios_base::failure.
ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace leotdd
