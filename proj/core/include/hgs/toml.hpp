#pragma once

#include <string>

#include "json.hpp"

namespace hgs {

// Minimal TOML subset sufficient for experiment configs: top-level keys,
// [table] sections, strings, integers, floats, booleans, and (nested)
// arrays. Comments start with '#'. Anything else is rejected.
nlohmann::json toml_parse(const std::string& text);

nlohmann::json config_load_file(const std::string& path);  // .toml or .json

}  // namespace hgs
