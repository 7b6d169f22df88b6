#pragma once

#include "tagscape/geometry.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace tagscape {

// Font size of a virtual placeholder mark, in pt.
inline constexpr double kVirtualSize = 0.1;
// Scaling applied to the weighted polygon average; the result is clamped to [-kIndexScale, kIndexScale].
inline constexpr double kIndexScale = 10.0;

// A point carrying a size: a placed tag's font size or a virtual placeholder.
struct SizedMark {
    Point center;
    double size = 0.0; // pt
    std::size_t polygon_index = 0;
    bool is_virtual = false;
};

struct PolygonIndex {
    std::size_t polygon_index = 0;
    std::size_t count = 0; // N_m
    double value = 0.0;    // I_m
};

struct IndexBreakdown {
    std::vector<PolygonIndex> per_polygon; // ascending polygon_index
    double overall = 0.0;
};

// Inverse-distance weight for marks in the same polygon, 0 across polygons.
// Throws GeometryError for coincident centers within one polygon.
double pair_weight(const SizedMark& a, const SizedMark& b);

// Negated Moran's I of one polygon's marks with unnormalized inverse-distance weights.
// Zero when fewer than two marks or all sizes are equal.
double sub_index(std::span<const SizedMark> marks);

// Weighted average of the polygon sub-indices by mark count, scaled and clamped.
double combine_sub_indices(std::span<const PolygonIndex> parts);

// Serial reference evaluation over all marks, grouped by polygon.
IndexBreakdown overall_index(std::span<const SizedMark> marks);

// Orientation preference applied to an index value: multiply when I >= 0, divide otherwise.
double oriented_score(double index, double weight);

// Per-orientation weights (degrees -> weight). Unlisted orientations weigh 1.
class OrientationWeights {
public:
    OrientationWeights() = default;
    explicit OrientationWeights(std::map<int, double> weights);

    double weight(int angle_deg) const;
    void set(int angle_deg, double weight);
    const std::map<int, double>& entries() const { return weights_; }

private:
    std::map<int, double> weights_;
};

} // namespace tagscape
