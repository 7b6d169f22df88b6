#include "tagscape/io.hpp"

#include "tagscape/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace tagscape {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

namespace {

Ring parse_ring(const json& coords, const std::string& name)
{
    if (!coords.is_array()) throw GeometryError(name + ": coordinates must be an array");
    Ring lonlat;
    for (const json& pos : coords) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
            throw GeometryError(name + ": malformed position");
        lonlat.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    if (lonlat.size() < 4) throw GeometryError(name + ": ring needs at least 4 positions");
    if (!(lonlat.front() == lonlat.back())) throw GeometryError(name + ": ring is not closed");
    Ring projected;
    projected.reserve(lonlat.size());
    for (const Point& p : lonlat) {
        try {
            projected.push_back(project(p.x, p.y));
        } catch (const GeometryError& e) {
            throw GeometryError(name + ": " + e.what());
        }
    }
    return projected;
}

Polygon parse_polygon(const json& rings, std::size_t index)
{
    const std::string name = "polygon " + std::to_string(index);
    if (!rings.is_array() || rings.empty()) throw GeometryError(name + ": polygon needs an exterior ring");
    Polygon poly;
    poly.exterior = parse_ring(rings[0], name + " ring 0");
    for (std::size_t r = 1; r < rings.size(); ++r)
        poly.holes.push_back(parse_ring(rings[r], name + " ring " + std::to_string(r)));
    return poly;
}

void collect_geometry(const json& geom, RegionSet& region)
{
    if (!geom.is_object() || !geom.contains("type")) throw GeometryError("GeoJSON object without a type");
    const std::string type = geom.at("type").get<std::string>();
    if (type == "Feature") {
        collect_geometry(geom.at("geometry"), region);
    } else if (type == "FeatureCollection") {
        for (const json& f : geom.at("features"))
            collect_geometry(f, region);
    } else if (type == "GeometryCollection") {
        for (const json& g : geom.at("geometries"))
            collect_geometry(g, region);
    } else if (type == "Polygon") {
        region.polygons.push_back(parse_polygon(geom.at("coordinates"), region.polygons.size()));
    } else if (type == "MultiPolygon") {
        for (const json& rings : geom.at("coordinates"))
            region.polygons.push_back(parse_polygon(rings, region.polygons.size()));
    } else {
        throw GeometryError("unsupported GeoJSON geometry type '" + type + "'");
    }
}

} // namespace

RegionSet parse_region_geojson(const json& doc)
{
    RegionSet region;
    try {
        collect_geometry(doc, region);
    } catch (const json::exception& e) {
        throw GeometryError(std::string("malformed GeoJSON: ") + e.what());
    }
    normalize_orientation(region);
    validate_region(region);
    return region;
}

RegionSet load_region(const std::filesystem::path& path)
{
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    return parse_region_geojson(doc);
}

json region_to_geojson(const RegionSet& region)
{
    json polys = json::array();
    const auto ring = [](const Ring& r) {
        json out = json::array();
        for (const Point& p : r) {
            const Point ll = unproject(p);
            out.push_back({ll.x, ll.y});
        }
        return out;
    };
    for (const Polygon& poly : region.polygons) {
        json rings = json::array();
        rings.push_back(ring(poly.exterior));
        for (const Ring& h : poly.holes)
            rings.push_back(ring(h));
        polys.push_back(std::move(rings));
    }
    return {{"type", "MultiPolygon"}, {"coordinates", std::move(polys)}};
}

namespace {

std::vector<TagSpec> finish_tags(std::vector<TagSpec> tags)
{
    std::set<std::string> seen;
    for (const TagSpec& t : tags) {
        if (t.text.empty()) throw InputError("tag text must not be empty");
        if (!std::isfinite(t.weight)) throw InputError("tag '" + t.text + "' has a non-finite weight");
        if (t.weight < 0.0) throw InputError("tag '" + t.text + "' has a negative weight");
        if (!seen.insert(t.text).second) throw InputError("duplicate tag '" + t.text + "'");
    }
    std::stable_sort(tags.begin(), tags.end(), [](const TagSpec& a, const TagSpec& b) { return a.weight > b.weight; });
    return tags;
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

std::string trim(std::string s)
{
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::optional<double> parse_number(const std::string& s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

} // namespace

std::vector<TagSpec> parse_tags_csv(std::string_view csv)
{
    std::vector<TagSpec> tags;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string_view::npos) end = csv.size();
        std::string_view line = csv.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        start = end + 1;
        ++line_no;
        if (trim(std::string(line)).empty()) continue;

        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw InputError("tags line " + std::to_string(line_no) + ": expected `text,weight`");
        const std::string text = trim(fields[0]);
        const std::string weight_text = trim(fields[1]);
        const auto weight = parse_number(weight_text);
        if (!weight) {
            if (tags.empty() && line_no == 1) continue; // header row
            throw InputError("tags line " + std::to_string(line_no) + ": weight '" + weight_text + "' is not a number");
        }
        tags.push_back({text, *weight, std::nullopt, std::nullopt});
    }
    return finish_tags(std::move(tags));
}

std::vector<TagSpec> parse_tags_json(const json& doc)
{
    if (!doc.is_array()) throw InputError("tags JSON must be a list");
    std::vector<TagSpec> tags;
    try {
        for (const json& item : doc) {
            TagSpec t;
            if (item.is_array() && item.size() == 2) {
                t.text = item[0].get<std::string>();
                t.weight = item[1].get<double>();
            } else {
                t.text = item.at("text").get<std::string>();
                t.weight = item.at("weight").get<double>();
                if (item.contains("fixed_font") && !item["fixed_font"].is_null())
                    t.fixed_font = item["fixed_font"].get<double>();
                if (item.contains("pin") && !item["pin"].is_null())
                    t.pinned_center = project(item["pin"].at(0).get<double>(), item["pin"].at(1).get<double>());
            }
            tags.push_back(std::move(t));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed tags JSON: ") + e.what());
    }
    return finish_tags(std::move(tags));
}

std::vector<TagSpec> load_tags(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".json" || (first != std::string::npos && text[first] == '[')) {
        try {
            return parse_tags_json(json::parse(text));
        } catch (const json::parse_error& e) {
            throw InputError(path.string() + ": " + e.what());
        }
    }
    return parse_tags_csv(text);
}

std::string tags_to_csv(const std::vector<TagSpec>& tags)
{
    std::string out = "text,weight\n";
    for (const TagSpec& t : tags) {
        out += t.text;
        out += ',';
        out += json(t.weight).dump();
        out += '\n';
    }
    return out;
}

} // namespace tagscape
