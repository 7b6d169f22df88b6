#include "tagscape/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace tagscape {

namespace {

Ring lonlat_ring(double lon0, double lat0, double radius, std::size_t n, double wobble, int lobes, bool clockwise)
{
    Ring ring;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        const double a = clockwise ? -t : t;
        const double r = radius * (1.0 + wobble * std::sin(lobes * a) + 0.5 * wobble * std::cos((2 * lobes + 1) * a));
        ring.push_back(project(lon0 + r * std::cos(a), lat0 + 0.75 * r * std::sin(a)));
    }
    ring.push_back(ring.front());
    return ring;
}

} // namespace

RegionSet demo_region()
{
    RegionSet region;
    Polygon main;
    main.exterior = lonlat_ring(10.0, 45.0, 8.0, 96, 0.18, 5, false);
    main.holes.push_back(lonlat_ring(8.0, 46.0, 1.2, 24, 0.1, 3, true));
    region.polygons.push_back(std::move(main));
    Polygon island;
    island.exterior = lonlat_ring(27.0, 44.0, 2.0, 32, 0.12, 3, false);
    region.polygons.push_back(std::move(island));
    normalize_orientation(region);
    validate_region(region);
    return region;
}

std::vector<TagSpec> demo_corpus(std::uint64_t seed, std::size_t n)
{
    static constexpr const char* kOnsets[] = {"b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "br", "st", "tr"};
    static constexpr const char* kNuclei[] = {"a", "e", "i", "o", "u", "ai", "ou"};
    static constexpr const char* kCodas[] = {"", "", "n", "r", "s", "l", "x"};
    std::mt19937_64 rng(seed);
    const auto pick = [&](std::size_t size) { return static_cast<std::size_t>(rng() % size); };

    std::set<std::string> seen;
    std::vector<TagSpec> tags;
    while (tags.size() < n) {
        const std::size_t syllables = 1 + pick(3);
        std::string word;
        for (std::size_t s = 0; s < syllables; ++s) {
            word += kOnsets[pick(std::size(kOnsets))];
            word += kNuclei[pick(std::size(kNuclei))];
        }
        word += kCodas[pick(std::size(kCodas))];
        if (!seen.insert(word).second) continue;
        tags.push_back({word, static_cast<double>(1 + pick(100)), std::nullopt, std::nullopt});
    }
    std::stable_sort(tags.begin(), tags.end(), [](const TagSpec& a, const TagSpec& b) { return a.weight > b.weight; });
    return tags;
}

LayoutConfig demo_config(std::uint64_t seed)
{
    LayoutConfig config;
    config.seed = seed;
    config.orientations.assign(kOrientations.begin(), kOrientations.end());
    config.orientation_weights.set(0, 2.0);
    return config;
}

} // namespace tagscape
