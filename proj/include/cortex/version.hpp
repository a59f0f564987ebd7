#pragma once

#include <filesystem>
#include <string_view>

namespace cortex {

inline constexpr std::string_view kEngineVersion = "0.1.0";

/// Directory holding the shipped data packs. CORTEX_DATA_DIR in the
/// environment takes precedence over the build-time default.
std::filesystem::path data_dir();

}  // namespace cortex
