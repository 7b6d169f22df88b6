#pragma once

#include "tagscape/metrics.hpp"
#include "tagscape/model.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace tagscape {

nlohmann::ordered_json config_to_json(const LayoutConfig& config);
LayoutConfig config_from_json(const nlohmann::json& j);

nlohmann::ordered_json levels_to_json(const std::vector<LevelView>& levels);
std::vector<LevelView> levels_from_json(const nlohmann::json& j);

nlohmann::ordered_json bundle_to_json(const LayoutBundle& bundle);
// Throws InputError on a missing or unsupported format_version or malformed content.
LayoutBundle bundle_from_json(const nlohmann::json& j);

// Pretty-printed JSON text followed by a newline.
std::string serialize_bundle(const LayoutBundle& bundle);
LayoutBundle parse_bundle(std::string_view text);
LayoutBundle read_bundle(const std::filesystem::path& path);

nlohmann::ordered_json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);
nlohmann::ordered_json comparison_to_json(const Comparison& c);

} // namespace tagscape
