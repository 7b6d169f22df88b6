#include "tagscape/virtual_tags.hpp"

#include "tagscape/error.hpp"
#include "tagscape/text_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tagscape {

VirtualStrategy parse_virtual_strategy(std::string_view name)
{
    if (name == "grid") return VirtualStrategy::grid;
    if (name == "random") return VirtualStrategy::random;
    throw ConfigError("unknown virtual strategy '" + std::string(name) + "' (expected grid or random)");
}

std::string_view to_string(VirtualStrategy s) { return s == VirtualStrategy::grid ? "grid" : "random"; }

double grid_pitch(double f_max, double f_min, double mean_len)
{
    if (!(f_min > 0.0) || f_max < f_min) throw ConfigError("font range requires F_max >= F_min > 0");
    if (!(mean_len > 0.0)) throw InputError("mean label length must be positive");
    return (f_max + f_min) * mean_len / 4.0;
}

double mean_label_length(std::span<const std::string> labels)
{
    if (labels.empty()) throw InputError("cannot size the virtual grid without tags");
    double total = 0.0;
    for (const std::string& s : labels)
        total += static_cast<double>(char_count(s));
    return total / static_cast<double>(labels.size());
}

namespace {

std::size_t cells_along(double extent, double pitch)
{
    const double n = extent / pitch;
    // Guard against 10G/G landing a hair above 10.
    return static_cast<std::size_t>(std::max(0.0, std::ceil(n - 1e-9)));
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

VirtualField generate_virtual_field(const RegionSet& region, VirtualStrategy strategy, double pitch_m,
                                    std::uint64_t seed)
{
    if (!(pitch_m > 0.0)) throw ConfigError("virtual grid pitch must be positive");
    VirtualField field;
    field.strategy = strategy;
    field.pitch = pitch_m;
    field.seed = seed;

    const BBox bb = region.bbox();
    const std::size_t nx = cells_along(bb.width(), pitch_m);
    const std::size_t ny = cells_along(bb.height(), pitch_m);
    std::vector<SizedMark> lattice;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const Point c{bb.min_x + (static_cast<double>(i) + 0.5) * pitch_m,
                          bb.min_y + (static_cast<double>(j) + 0.5) * pitch_m};
            if (const auto m = locate(c, region)) lattice.push_back({c, kVirtualSize, *m, true});
        }
    }
    if (strategy == VirtualStrategy::grid) {
        field.marks = std::move(lattice);
        return field;
    }

    std::mt19937_64 rng(seed);
    const std::size_t wanted = lattice.size();
    const std::size_t max_draws = 10000 * (wanted + 1);
    for (std::size_t draw = 0; field.marks.size() < wanted && draw < max_draws; ++draw) {
        const Point c{bb.min_x + unit_uniform(rng) * bb.width(), bb.min_y + unit_uniform(rng) * bb.height()};
        if (const auto m = locate(c, region)) field.marks.push_back({c, kVirtualSize, *m, true});
    }
    return field;
}

VirtualField prune(VirtualField field, std::span<const OrientedBox> placed)
{
    std::erase_if(field.marks, [&](const SizedMark& m) {
        return std::any_of(placed.begin(), placed.end(), [&](const OrientedBox& b) { return b.contains(m.center); });
    });
    return field;
}

} // namespace tagscape
