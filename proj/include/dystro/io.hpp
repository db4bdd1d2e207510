#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace dystro {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace dystro
