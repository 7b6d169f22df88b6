#include "tagscape/text_metrics.hpp"

#include "tagscape/error.hpp"

#include <json.hpp>

#include <fstream>
#include <vector>

namespace tagscape {

std::vector<char32_t> decode_utf8(std::string_view s)
{
    std::vector<char32_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        const auto b = static_cast<unsigned char>(s[i]);
        int len = 1;
        char32_t cp = b;
        if (b >= 0xF0 && b < 0xF8) len = 4, cp = b & 0x07;
        else if (b >= 0xE0) len = 3, cp = b & 0x0F;
        else if (b >= 0xC0) len = 2, cp = b & 0x1F;
        if (b >= 0x80 && b < 0xC0) len = 1;
        if (len > 1 && i + len <= s.size()) {
            for (int k = 1; k < len; ++k)
                cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        } else {
            len = 1;
            cp = b;
        }
        out.push_back(cp);
        i += static_cast<std::size_t>(len);
    }
    return out;
}

double TextMetricsModel::advance(char32_t c) const
{
    const auto it = advances.find(c);
    return it == advances.end() ? default_advance : it->second;
}

TextMetricsModel TextMetricsModel::from_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open metrics file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("metrics file " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw InputError("metrics file must hold a JSON object");
    TextMetricsModel model;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number() || value.get<double>() <= 0.0)
            throw InputError("metrics advance for '" + key + "' must be a positive number");
        if (key == "default") {
            model.default_advance = value.get<double>();
            continue;
        }
        const auto cps = decode_utf8(key);
        if (cps.size() != 1) throw InputError("metrics key '" + key + "' is not a single character");
        model.advances[cps.front()] = value.get<double>();
    }
    return model;
}

std::size_t char_count(std::string_view utf8) { return decode_utf8(utf8).size(); }

TextExtent text_extent(std::string_view text, double font_size, const TextMetricsModel& model)
{
    double em = 0.0;
    for (char32_t c : decode_utf8(text))
        em += model.advance(c);
    return {font_size * em, font_size};
}

} // namespace tagscape

namespace tagscape {

std::string encode_utf8(char32_t cp)
{
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

} // namespace tagscape
