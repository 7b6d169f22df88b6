#include "tagscape/svg.hpp"

#include "tagscape/error.hpp"

#include <cstdio>
#include <map>
#include <string_view>

namespace tagscape {

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string escape_xml(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string export_svg(const LayoutBundle& bundle, std::size_t level)
{
    if (level >= bundle.levels.size())
        throw InputError("level " + std::to_string(level) + " does not exist in the bundle");
    const LevelView& view = bundle.levels[level];
    const BBox bb = bundle.region.bbox();
    const double pixel_m = 0.0254 / bundle.config.screen.dpi;
    // Screen pixels per ground meter at this level.
    const double px_per_m = view.scale / pixel_m;
    const double width = bb.width() * px_per_m;
    const double height = bb.height() * px_per_m;
    const auto sx = [&](double x) { return (x - bb.min_x) * px_per_m; };
    const auto sy = [&](double y) { return (bb.max_y - y) * px_per_m; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out += "<path fill=\"#f3efe6\" stroke=\"#6b6b6b\" stroke-width=\"1\" fill-rule=\"evenodd\" d=\"";
    const auto ring = [&](const Ring& r) {
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            out += (i == 0 ? "M" : " L") + num(sx(r[i].x)) + " " + num(sy(r[i].y));
        out += " Z ";
    };
    for (const Polygon& poly : bundle.region.polygons) {
        ring(poly.exterior);
        for (const Ring& h : poly.holes)
            ring(h);
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\"/>\n";

    std::map<std::size_t, const PlacedTag*> by_rank;
    for (const PlacedTag& t : bundle.placed)
        by_rank[t.rank] = &t;
    const double px_per_pt = bundle.config.screen.dpi / 72.0;
    for (const LevelTag& lt : view.tags) {
        if (!lt.visible) continue;
        const auto it = by_rank.find(lt.rank);
        if (it == by_rank.end()) continue;
        const PlacedTag& t = *it->second;
        const std::string x = num(sx(t.box.center.x));
        const std::string y = num(sy(t.box.center.y));
        out += "<text x=\"" + x + "\" y=\"" + y + "\" font-size=\"" + num(lt.font_size * px_per_pt) +
               "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"monospace\"";
        if (t.box.angle_deg != 0.0) out += " transform=\"rotate(" + num(-t.box.angle_deg) + " " + x + " " + y + ")\"";
        out += ">" + escape_xml(t.spec.text) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace tagscape
