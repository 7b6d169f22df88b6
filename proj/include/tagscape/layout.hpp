#pragma once

#include "tagscape/model.hpp"
#include "tagscape/tin.hpp"
#include "tagscape/virtual_tags.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tagscape {

// Linear weight-to-size mapping; fixed_font wins when set, and a flat weight range maps to f_max.
double font_size_for_weight(const TagSpec& spec, double w_max, double w_min, double f_max, double f_min);

// A feasible (location, orientation) pair for the current tag.
struct Candidate {
    Point location;
    int orientation = 0;
    double triangle_area = 0.0;
    std::size_t triangle_rank = 0; // position in the area-sorted TIN
    std::size_t polygon_index = 0;
    double min_distance = 0.0;     // to the nearest placed tag center; 0 when nothing is placed
    OrientedBox box;
};

// Mutable state of one layout run, frozen while an iteration's candidates are scored.
class LayoutState {
public:
    LayoutState(RegionSet region, LayoutConfig config, double scale);

    const RegionSet& region() const { return region_; }
    const LayoutConfig& config() const { return config_; }
    double scale() const { return scale_; }
    const Tin& tin() const { return tin_; }
    const std::vector<PlacedTag>& placed() const { return placed_; }
    const VirtualField& virtual_field() const { return virtual_; }
    RunStats& stats() { return stats_; }
    const RunStats& stats() const { return stats_; }

    void set_virtual_field(VirtualField field);
    void rebuild_tin();
    // Rebuilds the TIN only if a placement happened since the last build.
    void ensure_tin();

    // Box of the tag at a location, size and orientation, in ground meters.
    OrientedBox tag_box(const TagSpec& tag, double font_size, Point center, int orientation) const;
    // In-region (returns the polygon) and clear of every placed box.
    std::optional<std::size_t> feasible(const OrientedBox& box) const;

    // Commits a placement and prunes virtual marks under it. Does not rebuild the TIN.
    const PlacedTag& place(const TagSpec& tag, double font_size, const OrientedBox& box, std::size_t polygon);

    // Placed tags plus surviving virtual marks, in that order.
    std::vector<SizedMark> marks() const;
    std::vector<OrientedBox> boxes() const;

private:
    RegionSet region_;
    LayoutConfig config_;
    double scale_;
    Tin tin_;
    std::vector<PlacedTag> placed_;
    VirtualField virtual_;
    RunStats stats_;
    bool tin_current_ = false;
};

// Scans triangles by descending area and collects feasible (location, orientation) pairs until
// `max_locations` distinct locations are found or the TIN is exhausted (no limit when nullopt).
std::vector<Candidate> candidates(LayoutState& state, const TagSpec& tag, double font_size,
                                  std::optional<std::size_t> max_locations);

// Drops candidates whose distance to the nearest placed tag is below the mean over candidate
// locations. Unchanged when nothing is placed.
std::vector<Candidate> filter_close(std::vector<Candidate> cands, std::span<const PlacedTag> placed);

// Index of the chosen candidate. Index mode maximizes the orientation-weighted index of the
// hypothetical layout; baseline mode takes the largest triangle with the preferred orientation.
// nullopt for an empty list.
std::optional<std::size_t> select_best(std::span<const Candidate> cands, LayoutState& state, double font_size);

// Largest start - k (k = 0, 1, ...) not below `floor` at which the tag has a feasible candidate.
std::optional<double> shrink_to_fit(LayoutState& state, const TagSpec& tag, double start, double floor);

// shrink_to_fit on the largest weight-sized tag; throws InfeasibleLayout("region too small").
double shrink_fmax(LayoutState& state, const TagSpec& first_tag);

struct IterationSnapshot {
    std::size_t iteration = 0;
    const LayoutState* state = nullptr;
};
using LayoutObserver = std::function<void(const IterationSnapshot&)>;

// Sorts tags by descending weight (stable), then places pinned tags and the rest largest-first.
LayoutBundle place_all(const RegionSet& region, std::vector<TagSpec> tags, const LayoutConfig& config,
                       const LayoutObserver& observer = {});

} // namespace tagscape
