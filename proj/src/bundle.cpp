#include "tagscape/bundle.hpp"

#include "tagscape/error.hpp"
#include "tagscape/io.hpp"

namespace tagscape {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json point_json(Point p) { return ordered_json::array({p.x, p.y}); }

Point point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <typename T>
ordered_json optional_json(const std::optional<T>& v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> optional_double(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

ordered_json ring_json(const Ring& r)
{
    ordered_json out = ordered_json::array();
    for (const Point& p : r)
        out.push_back(point_json(p));
    return out;
}

Ring ring_from(const json& j)
{
    Ring r;
    for (const json& p : j)
        r.push_back(point_from(p));
    return r;
}

ordered_json tag_spec_fields(const TagSpec& spec)
{
    ordered_json j;
    j["text"] = spec.text;
    j["weight"] = spec.weight;
    j["fixed_font"] = optional_json(spec.fixed_font);
    j["pinned_center"] = spec.pinned_center ? point_json(*spec.pinned_center) : ordered_json(nullptr);
    return j;
}

TagSpec tag_spec_from(const json& j)
{
    TagSpec spec;
    spec.text = j.at("text").get<std::string>();
    spec.weight = j.at("weight").get<double>();
    spec.fixed_font = optional_double(j, "fixed_font");
    if (j.contains("pinned_center") && !j.at("pinned_center").is_null())
        spec.pinned_center = point_from(j.at("pinned_center"));
    return spec;
}

} // namespace

ordered_json config_to_json(const LayoutConfig& c)
{
    ordered_json j;
    j["f_max"] = c.f_max;
    j["f_min"] = c.f_min;
    j["n_t"] = c.n_t;
    j["orientations"] = c.orientations;
    ordered_json weights = ordered_json::object();
    for (const auto& [angle, w] : c.orientation_weights.entries())
        weights[std::to_string(angle)] = w;
    j["orientation_weights"] = std::move(weights);
    j["strategy1"] = c.strategy1;
    j["strategy2"] = c.strategy2;
    j["mode"] = std::string(to_string(c.mode));
    j["virtual"] = std::string(to_string(c.virtual_strategy));
    j["seed"] = c.seed;
    j["scale"] = optional_json(c.scale);
    j["screen"] = {{"width_px", c.screen.width_px}, {"height_px", c.screen.height_px}, {"dpi", c.screen.dpi}};
    j["level_ratios"] = c.level_ratios;
    std::map<std::string, double> advances;
    for (const auto& [cp, adv] : c.metrics.advances)
        advances[encode_utf8(cp)] = adv;
    ordered_json adv_json = ordered_json::object();
    for (const auto& [k, v] : advances)
        adv_json[k] = v;
    j["text_metrics"] = {{"default_advance", c.metrics.default_advance}, {"advances", std::move(adv_json)}};
    return j;
}

LayoutConfig config_from_json(const json& j)
{
    LayoutConfig c;
    c.f_max = j.at("f_max").get<double>();
    c.f_min = j.at("f_min").get<double>();
    c.n_t = j.at("n_t").get<std::size_t>();
    c.orientations = j.at("orientations").get<std::vector<int>>();
    for (const auto& [angle, w] : j.at("orientation_weights").items())
        c.orientation_weights.set(std::stoi(angle), w.get<double>());
    c.strategy1 = j.at("strategy1").get<bool>();
    c.strategy2 = j.at("strategy2").get<bool>();
    c.mode = parse_selection_mode(j.at("mode").get<std::string>());
    c.virtual_strategy = parse_virtual_strategy(j.at("virtual").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.scale = optional_double(j, "scale");
    const json& s = j.at("screen");
    c.screen = {s.at("width_px").get<int>(), s.at("height_px").get<int>(), s.at("dpi").get<double>()};
    c.level_ratios = j.at("level_ratios").get<std::vector<double>>();
    if (j.contains("text_metrics")) {
        const json& tm = j.at("text_metrics");
        c.metrics.default_advance = tm.at("default_advance").get<double>();
        c.metrics.advances.clear();
        for (const auto& [k, v] : tm.at("advances").items()) {
            const auto cps = decode_utf8(k);
            if (cps.size() != 1) throw InputError("text metrics key '" + k + "' is not a single character");
            const char32_t cp = cps.front();
            c.metrics.advances[cp] = v.get<double>();
        }
    }
    return c;
}

ordered_json levels_to_json(const std::vector<LevelView>& levels)
{
    ordered_json out = ordered_json::array();
    for (const LevelView& v : levels) {
        ordered_json tags = ordered_json::array();
        for (const LevelTag& t : v.tags)
            tags.push_back({{"rank", t.rank}, {"font_size", t.font_size}, {"visible", t.visible}});
        out.push_back({{"ratio", v.ratio},
                       {"scale", v.scale},
                       {"empty", v.empty},
                       {"visible_count", v.visible_count()},
                       {"tags", std::move(tags)}});
    }
    return out;
}

std::vector<LevelView> levels_from_json(const json& j)
{
    std::vector<LevelView> out;
    for (const json& v : j) {
        LevelView view;
        view.ratio = v.at("ratio").get<double>();
        view.scale = v.at("scale").get<double>();
        view.empty = v.at("empty").get<bool>();
        for (const json& t : v.at("tags"))
            view.tags.push_back({t.at("rank").get<std::size_t>(), t.at("font_size").get<double>(), t.at("visible").get<bool>()});
        out.push_back(std::move(view));
    }
    return out;
}

ordered_json bundle_to_json(const LayoutBundle& b)
{
    ordered_json j;
    j["format_version"] = b.format_version;

    ordered_json polys = ordered_json::array();
    for (const Polygon& poly : b.region.polygons) {
        ordered_json holes = ordered_json::array();
        for (const Ring& h : poly.holes)
            holes.push_back(ring_json(h));
        polys.push_back({{"exterior", ring_json(poly.exterior)}, {"holes", std::move(holes)}});
    }
    j["region"] = {{"crs", "EPSG:3857"}, {"polygons", std::move(polys)}};
    j["config"] = config_to_json(b.config);
    j["scale"] = b.scale;
    j["effective_f_max"] = b.effective_f_max;

    ordered_json placed = ordered_json::array();
    for (const PlacedTag& t : b.placed) {
        ordered_json tj;
        tj["rank"] = t.rank;
        const ordered_json spec = tag_spec_fields(t.spec);
        for (const auto& [k, v] : spec.items())
            tj[k] = v;
        tj["font_size"] = t.font_size;
        tj["center"] = point_json(t.box.center);
        tj["angle"] = t.box.angle_deg;
        tj["width"] = t.box.width;
        tj["height"] = t.box.height;
        ordered_json corners = ordered_json::array();
        for (const Point& c : t.box.corners())
            corners.push_back(point_json(c));
        tj["corners"] = std::move(corners);
        tj["polygon_index"] = t.polygon_index;
        placed.push_back(std::move(tj));
    }
    j["placed"] = std::move(placed);

    ordered_json unplaced = ordered_json::array();
    for (const UnplacedTag& t : b.unplaced) {
        ordered_json tj = tag_spec_fields(t.spec);
        tj["font_size"] = t.font_size;
        tj["reason"] = t.reason;
        unplaced.push_back(std::move(tj));
    }
    j["unplaced"] = std::move(unplaced);

    const VirtualSummary& v = b.virtual_field;
    j["virtual_field"] = {{"strategy", std::string(to_string(v.strategy))},
                          {"seed", v.seed},
                          {"pitch_pt", v.pitch_pt},
                          {"pitch_m", v.pitch_m},
                          {"initial_count", v.initial_count},
                          {"remaining_count", v.remaining_count}};
    j["stats"] = {{"triangle_visits", b.stats.triangle_visits},
                  {"feasibility_tests", b.stats.feasibility_tests},
                  {"hypotheses_scored", b.stats.hypotheses_scored},
                  {"tin_builds", b.stats.tin_builds}};
    j["metrics"] = {{"N", b.metrics.n},
                    {"I", b.metrics.index},
                    {"C", b.metrics.compactness},
                    {"N_hor", b.metrics.n_horizontal},
                    {"t_seconds", optional_json(b.metrics.seconds)}};
    j["levels"] = levels_to_json(b.levels);
    j["warnings"] = b.warnings;
    return j;
}

LayoutBundle bundle_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("format_version")) throw InputError("bundle has no format_version");
    if (j.at("format_version") != kFormatVersion)
        throw InputError("unsupported bundle format_version " + j.at("format_version").dump());
    LayoutBundle b;
    try {
        for (const json& p : j.at("region").at("polygons")) {
            Polygon poly;
            poly.exterior = ring_from(p.at("exterior"));
            for (const json& h : p.at("holes"))
                poly.holes.push_back(ring_from(h));
            b.region.polygons.push_back(std::move(poly));
        }
        b.config = config_from_json(j.at("config"));
        b.scale = j.at("scale").get<double>();
        b.effective_f_max = j.at("effective_f_max").get<double>();
        for (const json& t : j.at("placed")) {
            PlacedTag p;
            p.spec = tag_spec_from(t);
            p.rank = t.at("rank").get<std::size_t>();
            p.font_size = t.at("font_size").get<double>();
            p.box = {point_from(t.at("center")), t.at("width").get<double>(), t.at("height").get<double>(),
                     t.at("angle").get<double>()};
            p.polygon_index = t.at("polygon_index").get<std::size_t>();
            b.placed.push_back(std::move(p));
        }
        for (const json& t : j.at("unplaced"))
            b.unplaced.push_back({tag_spec_from(t), t.at("font_size").get<double>(), t.at("reason").get<std::string>()});
        const json& v = j.at("virtual_field");
        b.virtual_field = {parse_virtual_strategy(v.at("strategy").get<std::string>()), v.at("seed").get<std::uint64_t>(),
                           v.at("pitch_pt").get<double>(), v.at("pitch_m").get<double>(),
                           v.at("initial_count").get<std::size_t>(), v.at("remaining_count").get<std::size_t>()};
        const json& s = j.at("stats");
        b.stats = {s.at("triangle_visits").get<std::size_t>(), s.at("feasibility_tests").get<std::size_t>(),
                   s.at("hypotheses_scored").get<std::size_t>(), s.at("tin_builds").get<std::size_t>()};
        const json& m = j.at("metrics");
        b.metrics = {m.at("N").get<std::size_t>(), m.at("I").get<double>(), m.at("C").get<double>(),
                     m.at("N_hor").get<std::size_t>(), optional_double(m, "t_seconds")};
        b.levels = levels_from_json(j.at("levels"));
        b.warnings = j.at("warnings").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed bundle: ") + e.what());
    }
    return b;
}

std::string serialize_bundle(const LayoutBundle& bundle) { return bundle_to_json(bundle).dump(1) + "\n"; }

LayoutBundle parse_bundle(std::string_view text)
{
    try {
        return bundle_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        throw InputError(std::string("bundle is not valid JSON: ") + e.what());
    }
}

LayoutBundle read_bundle(const std::filesystem::path& path) { return parse_bundle(read_file(path)); }

ordered_json report_to_json(const EvalReport& r)
{
    ordered_json j;
    j["N"] = r.n;
    j["I"] = r.index;
    j["C"] = r.compactness;
    j["t_seconds"] = optional_json(r.seconds);
    j["N_hor"] = r.n_horizontal;
    j["mode"] = std::string(to_string(r.mode));
    j["corpus_id"] = r.corpus_id;
    j["region_id"] = r.region_id;
    j["config"] = config_to_json(r.config);
    return j;
}

EvalReport report_from_json(const json& j)
{
    EvalReport r;
    try {
        r.n = j.at("N").get<std::size_t>();
        r.index = j.at("I").get<double>();
        r.compactness = j.at("C").get<double>();
        r.seconds = optional_double(j, "t_seconds");
        r.n_horizontal = j.at("N_hor").get<std::size_t>();
        r.mode = parse_selection_mode(j.at("mode").get<std::string>());
        r.corpus_id = j.at("corpus_id").get<std::string>();
        r.region_id = j.at("region_id").get<std::string>();
        r.config = config_from_json(j.at("config"));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
    return r;
}

ordered_json comparison_to_json(const Comparison& c)
{
    ordered_json rows = ordered_json::array();
    for (const ComparisonRow& r : c.rows)
        rows.push_back({{"metric", r.metric},
                        {"a", r.a},
                        {"b", r.b},
                        {"delta", r.delta},
                        {"better", r.higher_is_better ? "up" : "down"}});
    return {{"rows", std::move(rows)}};
}

} // namespace tagscape
