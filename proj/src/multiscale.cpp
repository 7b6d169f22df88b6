#include "tagscape/multiscale.hpp"

#include "tagscape/error.hpp"

#include <algorithm>

namespace tagscape {

double rescale(double font_size, double ratio) { return font_size * ratio; }

double rescale(double font_size, const ScaleContext& ctx) { return font_size * ctx.s_tar / ctx.s_ori; }

std::size_t LevelView::visible_count() const
{
    return static_cast<std::size_t>(std::count_if(tags.begin(), tags.end(), [](const LevelTag& t) { return t.visible; }));
}

LevelView level_view(std::span<const PlacedTag> placed, double f_min, double s_ori, double ratio)
{
    if (!(ratio > 0.0)) throw ConfigError("level ratio must be positive");
    LevelView view;
    view.ratio = ratio;
    view.scale = s_ori * ratio;
    double largest = 0.0;
    for (const PlacedTag& t : placed) {
        const double f = rescale(t.font_size, ratio);
        largest = std::max(largest, f);
        view.tags.push_back({t.rank, f, f >= f_min});
    }
    view.empty = !placed.empty() && largest < f_min;
    return view;
}

std::vector<LevelView> level_views(const LayoutBundle& bundle, std::span<const double> ratios)
{
    std::vector<LevelView> views;
    views.reserve(ratios.size());
    for (double r : ratios)
        views.push_back(level_view(bundle.placed, bundle.config.f_min, bundle.scale, r));
    return views;
}

bool needs_reconstruction(const LayoutBundle& bundle, const ScaleContext& ctx)
{
    return ctx.s_tar > ctx.s_ori && !bundle.unplaced.empty();
}

double initial_scale(const BBox& bbox, const Screen& screen)
{
    if (screen.width_px <= 0 || screen.height_px <= 0 || !(screen.dpi > 0.0))
        throw ConfigError("screen dimensions must be positive");
    if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0)) throw GeometryError("degenerate region bounding box");
    const double pixel = 0.0254 / screen.dpi;
    const double ground_per_px = std::max(bbox.width() / screen.width_px, bbox.height() / screen.height_px);
    return pixel / ground_per_px;
}

double initial_scale(const RegionSet& region, const Screen& screen) { return initial_scale(region.bbox(), screen); }

} // namespace tagscape
