#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace windres {

using ordered_json = nlohmann::ordered_json;

/// Shortest 17-significant-digit decimal form ("%.17g"); byte-stable
/// across runs and platforms with IEEE-754 doubles.
std::string format_double(double value);

/// Serializes with every floating-point number rendered by format_double,
/// keys in insertion order, two-space indentation and a trailing newline.
std::string dump_deterministic(const ordered_json& j);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace windres
