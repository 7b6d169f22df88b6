#pragma once

#include "tagscape/autocorrelation.hpp"
#include "tagscape/geometry.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tagscape {

enum class VirtualStrategy { grid, random };

VirtualStrategy parse_virtual_strategy(std::string_view name);
std::string_view to_string(VirtualStrategy s);

// Placeholder marks of size kVirtualSize filling the region before real tags land.
struct VirtualField {
    std::vector<SizedMark> marks;
    VirtualStrategy strategy = VirtualStrategy::grid;
    double pitch = 0.0; // meters
    std::uint64_t seed = 0;
};

// Grid pitch in pt from the font range and the mean label length in characters.
double grid_pitch(double f_max, double f_min, double mean_len);

// Mean character count over the labels. Throws InputError for an empty list.
double mean_label_length(std::span<const std::string> labels);

// Grid: lattice of the given pitch anchored at the region bbox min corner, cell centers kept when
// inside the region. Random: the same number of centers drawn uniformly inside the region.
VirtualField generate_virtual_field(const RegionSet& region, VirtualStrategy strategy, double pitch_m,
                                    std::uint64_t seed);

// Drops every mark whose center lies inside (or on) a placed box.
VirtualField prune(VirtualField field, std::span<const OrientedBox> placed);

} // namespace tagscape
