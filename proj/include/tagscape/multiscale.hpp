#pragma once

#include "tagscape/model.hpp"

#include <span>
#include <vector>

namespace tagscape {

// Map scales are representative fractions (1:20,921,196 -> 1/20921196); zooming in raises them.
struct ScaleContext {
    double s_ori = 1.0;
    double s_tar = 1.0;
    Screen screen;

    double ratio() const { return s_tar / s_ori; }
};

// Font size after a scale change.
double rescale(double font_size, const ScaleContext& ctx);
double rescale(double font_size, double ratio);

// One view per ratio (S_tar / S_ori). A tag is visible iff its rescaled size is at least F_min.
LevelView level_view(std::span<const PlacedTag> placed, double f_min, double s_ori, double ratio);
std::vector<LevelView> level_views(const LayoutBundle& bundle, std::span<const double> ratios);

// Zooming in with tags left over calls for a fresh layout at the target scale.
bool needs_reconstruction(const LayoutBundle& bundle, const ScaleContext& ctx);

// Scale at which the region bbox fills the screen.
double initial_scale(const BBox& bbox, const Screen& screen);
double initial_scale(const RegionSet& region, const Screen& screen);

} // namespace tagscape
