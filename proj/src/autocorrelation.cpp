#include "tagscape/autocorrelation.hpp"

#include "tagscape/error.hpp"

#include <algorithm>
#include <string>

namespace tagscape {

double pair_weight(const SizedMark& a, const SizedMark& b)
{
    if (a.polygon_index != b.polygon_index) return 0.0;
    const double d = distance(a.center, b.center);
    if (d == 0.0) throw GeometryError("coincident mark centers in polygon " + std::to_string(a.polygon_index));
    return 1.0 / d;
}

double sub_index(std::span<const SizedMark> marks)
{
    const std::size_t n = marks.size();
    if (n < 2) return 0.0;
    const bool uniform = std::all_of(marks.begin(), marks.end(),
                                     [&](const SizedMark& m) { return m.size == marks.front().size; });
    if (uniform) return 0.0;

    double mean = 0.0;
    for (const SizedMark& m : marks)
        mean += m.size;
    mean /= static_cast<double>(n);

    // Row sums first, then rows in order; the OpenMP kernel follows the same order.
    double weight_sum = 0.0, cross_sum = 0.0, variance_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double di = marks[i].size - mean;
        double row_w = 0.0, row_c = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = pair_weight(marks[i], marks[j]);
            row_w += w;
            row_c += w * (marks[j].size - mean);
        }
        weight_sum += row_w;
        cross_sum += di * row_c;
        variance_sum += di * di;
    }
    return -(static_cast<double>(n) / weight_sum) * (cross_sum / variance_sum);
}

double combine_sub_indices(std::span<const PolygonIndex> parts)
{
    double weighted = 0.0;
    std::size_t total = 0;
    for (const PolygonIndex& p : parts) {
        weighted += p.value * static_cast<double>(p.count);
        total += p.count;
    }
    if (total == 0) return 0.0;
    return std::clamp(weighted / static_cast<double>(total) * kIndexScale, -kIndexScale, kIndexScale);
}

IndexBreakdown overall_index(std::span<const SizedMark> marks)
{
    std::map<std::size_t, std::vector<SizedMark>> groups;
    for (const SizedMark& m : marks)
        groups[m.polygon_index].push_back(m);
    IndexBreakdown out;
    for (const auto& [poly, members] : groups)
        out.per_polygon.push_back({poly, members.size(), sub_index(members)});
    out.overall = combine_sub_indices(out.per_polygon);
    return out;
}

double oriented_score(double index, double weight)
{
    if (!(weight > 0.0)) throw ConfigError("orientation weight must be positive");
    return index >= 0.0 ? index * weight : index / weight;
}

OrientationWeights::OrientationWeights(std::map<int, double> weights)
{
    for (const auto& [angle, w] : weights)
        set(angle, w);
}

double OrientationWeights::weight(int angle_deg) const
{
    const auto it = weights_.find(angle_deg);
    return it == weights_.end() ? 1.0 : it->second;
}

void OrientationWeights::set(int angle_deg, double weight)
{
    if (!is_valid_orientation(angle_deg))
        throw ConfigError("orientation " + std::to_string(angle_deg) + " is not one of the nine admissible angles");
    if (!(weight > 0.0)) throw ConfigError("orientation weight must be positive");
    weights_[angle_deg] = weight;
}

} // namespace tagscape
