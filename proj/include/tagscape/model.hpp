#pragma once

// Plain data shared by the layout engine, the multi-scale views, metrics and serialization.

#include "tagscape/autocorrelation.hpp"
#include "tagscape/geometry.hpp"
#include "tagscape/text_metrics.hpp"
#include "tagscape/virtual_tags.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tagscape {

struct TagSpec {
    std::string text;
    double weight = 0.0;
    std::optional<Point> pinned_center; // projected meters
    std::optional<double> fixed_font;   // pt

    friend bool operator==(const TagSpec&, const TagSpec&) = default;
};

struct PlacedTag {
    TagSpec spec;
    double font_size = 0.0; // pt
    OrientedBox box;
    std::size_t polygon_index = 0;
    std::size_t rank = 0; // placement order
};

struct UnplacedTag {
    TagSpec spec;
    double font_size = 0.0;
    std::string reason;
};

struct Screen {
    int width_px = 1920;
    int height_px = 1080;
    double dpi = 96.0;
};

enum class SelectionMode { index, baseline };

SelectionMode parse_selection_mode(std::string_view name);
std::string_view to_string(SelectionMode m);

struct LayoutConfig {
    double f_max = 60.0;
    double f_min = 6.0;
    std::size_t n_t = 200;
    std::vector<int> orientations{0};
    OrientationWeights orientation_weights;
    bool strategy1 = true;
    bool strategy2 = true;
    SelectionMode mode = SelectionMode::index;
    VirtualStrategy virtual_strategy = VirtualStrategy::grid;
    std::uint64_t seed = 0;
    std::optional<double> scale; // representative fraction; derived from the screen when absent
    Screen screen;
    std::vector<double> level_ratios{1.0, 0.5, 0.25};
    TextMetricsModel metrics;

    // Throws ConfigError on an invalid combination.
    void validate() const;
    // Orientations sorted by descending weight, ties in configured order.
    std::vector<int> preference_order() const;
};

struct LevelTag {
    std::size_t rank = 0;
    double font_size = 0.0; // rescaled, pt
    bool visible = false;
};

struct LevelView {
    double ratio = 1.0; // S_tar / S_ori
    double scale = 0.0; // S_tar
    bool empty = false; // largest tag would fall below F_min
    std::vector<LevelTag> tags;

    std::size_t visible_count() const;
};

struct VirtualSummary {
    VirtualStrategy strategy = VirtualStrategy::grid;
    std::uint64_t seed = 0;
    double pitch_pt = 0.0;
    double pitch_m = 0.0;
    std::size_t initial_count = 0;
    std::size_t remaining_count = 0;
};

// Deterministic work counters of one run.
struct RunStats {
    std::size_t triangle_visits = 0;
    std::size_t feasibility_tests = 0;
    std::size_t hypotheses_scored = 0;
    std::size_t tin_builds = 0;
};

struct Metrics {
    std::size_t n = 0;
    double index = 0.0;
    double compactness = 0.0;
    std::size_t n_horizontal = 0;
    std::optional<double> seconds;
};

inline constexpr int kFormatVersion = 1;

struct LayoutBundle {
    int format_version = kFormatVersion;
    RegionSet region;
    LayoutConfig config;
    double effective_f_max = 0.0;
    double scale = 0.0; // S_ori
    std::vector<PlacedTag> placed;
    std::vector<UnplacedTag> unplaced;
    VirtualSummary virtual_field;
    RunStats stats;
    Metrics metrics;
    std::vector<LevelView> levels;
    std::vector<std::string> warnings;
};

} // namespace tagscape
