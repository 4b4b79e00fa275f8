#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dephase::scenario {

// Figure presets as explicit config text: "1", "2", "3a", "3b", "4".
// Throws InvalidParameter for an unknown id.
std::string preset_config(std::string_view id);

std::vector<std::string> preset_ids();

}  // namespace dephase::scenario
