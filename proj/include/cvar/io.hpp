#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cvar {

/// Writes `content` to a sibling temp file and renames it over `path`, so
/// readers never observe a partially written store.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Whole file as bytes. Throws IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace cvar
