#pragma once

#include "tagscape/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tagscape {

// GeoJSON Polygon / MultiPolygon (bare, Feature or FeatureCollection) in WGS84, projected to Web
// Mercator with normalized ring orientation. Throws GeometryError naming the offending ring.
RegionSet parse_region_geojson(const nlohmann::json& doc);
RegionSet load_region(const std::filesystem::path& path);
// Unprojected GeoJSON MultiPolygon of a region.
nlohmann::json region_to_geojson(const RegionSet& region);

// `text,weight` rows (optional header) or a JSON list of {"text", "weight"} objects.
// Result is sorted by descending weight, stable on ties. Throws InputError on duplicates or
// negative weights.
std::vector<TagSpec> parse_tags_csv(std::string_view csv);
std::vector<TagSpec> parse_tags_json(const nlohmann::json& doc);
std::vector<TagSpec> load_tags(const std::filesystem::path& path);
std::string tags_to_csv(const std::vector<TagSpec>& tags);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace tagscape
