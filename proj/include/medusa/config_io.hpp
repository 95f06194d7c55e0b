#pragma once

#include "medusa/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace medusa {

/// Field names accepted in config documents.
const std::vector<std::string>& config_keys();

/// Assigns one field from its textual value. Throws ConfigError on an unknown
/// key or unparsable value.
void set_config_value(InterconnectConfig& cfg, std::string_view key, std::string_view value);

/// Parses a config document on top of `base`. Accepts either a single JSON
/// object or `key = value` lines (blank lines and `#` comments ignored).
InterconnectConfig parse_config(std::string_view text, InterconnectConfig base = {});

InterconnectConfig load_config_file(const std::filesystem::path& path,
                                    InterconnectConfig base = {});

/// Renders the config as `key = value` lines, in config_keys() order.
std::string format_config(const InterconnectConfig& cfg);

}  // namespace medusa
