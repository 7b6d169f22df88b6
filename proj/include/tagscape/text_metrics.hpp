#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tagscape {

struct TextExtent {
    double width = 0.0;  // pt
    double height = 0.0; // pt
};

// Per-character advance widths in em. Characters missing from the table use default_advance.
struct TextMetricsModel {
    std::unordered_map<char32_t, double> advances;
    double default_advance = 0.6;

    double advance(char32_t c) const;

    // Reads a JSON object {"<char>": advance_em, ...}; the optional key "default" sets default_advance.
    static TextMetricsModel from_json_file(const std::filesystem::path& path);
};

// Number of code points in a UTF-8 string (invalid bytes count as one character each).
std::size_t char_count(std::string_view utf8);

TextExtent text_extent(std::string_view text, double font_size, const TextMetricsModel& model);

} // namespace tagscape

namespace tagscape {

std::string encode_utf8(char32_t cp);
// Invalid bytes decode as one code point each.
std::vector<char32_t> decode_utf8(std::string_view s);

} // namespace tagscape
