#include "tagscape/metrics.hpp"

#include "tagscape/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>

namespace tagscape {

double compactness(std::span<const PlacedTag> placed, const RegionSet& region)
{
    const double total = region.area();
    if (!(total > 0.0)) throw GeometryError("compactness needs a region with positive area");
    double words = 0.0;
    for (const PlacedTag& t : placed)
        words += t.box.area();
    return words / total;
}

namespace {

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n)
    {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void text(std::string_view s)
    {
        bytes(s.data(), s.size());
        bytes("\0", 1);
    }
    void number(double v)
    {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        bytes(&bits, sizeof bits);
    }
    std::string hex() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
        return buf;
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

std::string corpus_fingerprint(const LayoutBundle& bundle)
{
    std::vector<std::pair<std::string, double>> tags;
    for (const PlacedTag& t : bundle.placed)
        tags.emplace_back(t.spec.text, t.spec.weight);
    for (const UnplacedTag& t : bundle.unplaced)
        tags.emplace_back(t.spec.text, t.spec.weight);
    std::sort(tags.begin(), tags.end());
    Fnv1a h;
    for (const auto& [text, weight] : tags) {
        h.text(text);
        h.number(weight);
    }
    return h.hex();
}

std::string region_fingerprint(const RegionSet& region)
{
    Fnv1a h;
    const auto ring = [&](const Ring& r) {
        h.text("ring");
        for (const Point& p : r) {
            h.number(p.x);
            h.number(p.y);
        }
    };
    for (const Polygon& poly : region.polygons) {
        ring(poly.exterior);
        for (const Ring& hole : poly.holes)
            ring(hole);
    }
    return h.hex();
}

EvalReport evaluate(const LayoutBundle& bundle)
{
    EvalReport r;
    r.n = bundle.placed.size();
    std::vector<SizedMark> marks;
    marks.reserve(bundle.placed.size());
    for (const PlacedTag& t : bundle.placed)
        marks.push_back({t.box.center, t.font_size, t.polygon_index, false});
    r.index = marks.empty() ? 0.0 : overall_index(marks).overall;
    r.compactness = compactness(bundle.placed, bundle.region);
    r.seconds = bundle.metrics.seconds;
    r.n_horizontal = static_cast<std::size_t>(
        std::count_if(bundle.placed.begin(), bundle.placed.end(), [](const PlacedTag& t) { return t.box.angle_deg == 0.0; }));
    r.mode = bundle.config.mode;
    r.config = bundle.config;
    r.corpus_id = corpus_fingerprint(bundle);
    r.region_id = region_fingerprint(bundle.region);
    return r;
}

Metrics to_metrics(const EvalReport& report)
{
    return {report.n, report.index, report.compactness, report.n_horizontal, report.seconds};
}

Comparison compare(const EvalReport& a, const EvalReport& b)
{
    if (a.corpus_id != b.corpus_id) throw InputError("reports were produced from different tag corpora");
    if (a.region_id != b.region_id) throw InputError("reports were produced from different regions");
    Comparison c;
    const auto row = [&](std::string name, double va, double vb, bool higher) {
        c.rows.push_back({std::move(name), va, vb, va - vb, higher});
    };
    row("N", static_cast<double>(a.n), static_cast<double>(b.n), true);
    row("I", a.index, b.index, true);
    row("C", a.compactness, b.compactness, true);
    if (a.seconds && b.seconds) row("t", *a.seconds, *b.seconds, false);
    return c;
}

std::string format_table(const Comparison& c, std::string_view label_a, std::string_view label_b)
{
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %14.*s %14.*s %14s\n", "metric", static_cast<int>(label_a.size()),
                  label_a.data(), static_cast<int>(label_b.size()), label_b.data(), "delta");
    out += line;
    for (const ComparisonRow& r : c.rows) {
        const std::string name = r.metric + (r.higher_is_better ? " (up)" : " (down)");
        std::snprintf(line, sizeof line, "%-8s %14.6g %14.6g %+14.6g\n", name.c_str(), r.a, r.b, r.delta);
        out += line;
    }
    return out;
}

} // namespace tagscape
