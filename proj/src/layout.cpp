#include "tagscape/layout.hpp"

#include "tagscape/error.hpp"
#include "tagscape/kernels.hpp"
#include "tagscape/metrics.hpp"
#include "tagscape/multiscale.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace tagscape {

SelectionMode parse_selection_mode(std::string_view name)
{
    if (name == "index") return SelectionMode::index;
    if (name == "baseline") return SelectionMode::baseline;
    throw ConfigError("unknown selection mode '" + std::string(name) + "' (expected index or baseline)");
}

std::string_view to_string(SelectionMode m) { return m == SelectionMode::index ? "index" : "baseline"; }

void LayoutConfig::validate() const
{
    if (!(f_min > 0.0) || !(f_max >= f_min) || !std::isfinite(f_max))
        throw ConfigError("font range requires F_max >= F_min > 0");
    if (n_t < 1) throw ConfigError("N_T must be at least 1");
    if (orientations.empty()) throw ConfigError("at least one orientation is required");
    std::set<int> seen;
    for (int o : orientations) {
        if (!is_valid_orientation(o)) throw ConfigError("orientation " + std::to_string(o) + " is not admissible");
        if (!seen.insert(o).second) throw ConfigError("orientation " + std::to_string(o) + " listed twice");
    }
    for (const auto& [angle, w] : orientation_weights.entries())
        if (!(w > 0.0)) throw ConfigError("orientation weight for " + std::to_string(angle) + " must be positive");
    if (scale && !(*scale > 0.0)) throw ConfigError("scale must be positive");
    if (screen.width_px <= 0 || screen.height_px <= 0 || !(screen.dpi > 0.0))
        throw ConfigError("screen dimensions must be positive");
    for (double r : level_ratios)
        if (!(r > 0.0)) throw ConfigError("level ratios must be positive");
    if (!(metrics.default_advance > 0.0)) throw ConfigError("default text advance must be positive");
}

std::vector<int> LayoutConfig::preference_order() const
{
    std::vector<int> order = orientations;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return orientation_weights.weight(a) > orientation_weights.weight(b);
    });
    return order;
}

double font_size_for_weight(const TagSpec& spec, double w_max, double w_min, double f_max, double f_min)
{
    if (spec.fixed_font) return *spec.fixed_font;
    if (w_max == w_min) return f_max;
    return f_min + (spec.weight - w_min) * (f_max - f_min) / (w_max - w_min);
}

LayoutState::LayoutState(RegionSet region, LayoutConfig config, double scale)
    : region_(std::move(region)), config_(std::move(config)), scale_(scale)
{
    if (!(scale_ > 0.0)) throw ConfigError("layout scale must be positive");
}

void LayoutState::set_virtual_field(VirtualField field)
{
    virtual_ = prune(std::move(field), boxes());
}

void LayoutState::ensure_tin()
{
    if (!tin_current_) rebuild_tin();
}

void LayoutState::rebuild_tin()
{
    tin_ = build_tin(region_, boxes());
    ++stats_.tin_builds;
    tin_current_ = true;
}

OrientedBox LayoutState::tag_box(const TagSpec& tag, double font_size, Point center, int orientation) const
{
    const TextExtent ext = text_extent(tag.text, font_size, config_.metrics);
    return {center, points_to_ground(ext.width, scale_), points_to_ground(ext.height, scale_),
            static_cast<double>(orientation)};
}

std::optional<std::size_t> LayoutState::feasible(const OrientedBox& box) const
{
    if (!(box.width > 0.0) || !(box.height > 0.0)) return std::nullopt;
    for (const PlacedTag& p : placed_)
        if (boxes_intersect(box, p.box)) return std::nullopt;
    return box_in_region(box, region_);
}

const PlacedTag& LayoutState::place(const TagSpec& tag, double font_size, const OrientedBox& box, std::size_t polygon)
{
    placed_.push_back({tag, font_size, box, polygon, placed_.size()});
    const OrientedBox single[] = {box};
    virtual_ = prune(std::move(virtual_), single);
    tin_current_ = false;
    return placed_.back();
}

std::vector<SizedMark> LayoutState::marks() const
{
    std::vector<SizedMark> out;
    out.reserve(placed_.size() + virtual_.marks.size());
    for (const PlacedTag& p : placed_)
        out.push_back({p.box.center, p.font_size, p.polygon_index, false});
    out.insert(out.end(), virtual_.marks.begin(), virtual_.marks.end());
    return out;
}

std::vector<OrientedBox> LayoutState::boxes() const
{
    std::vector<OrientedBox> out;
    out.reserve(placed_.size());
    for (const PlacedTag& p : placed_)
        out.push_back(p.box);
    return out;
}

std::vector<Candidate> candidates(LayoutState& state, const TagSpec& tag, double font_size,
                                  std::optional<std::size_t> max_locations)
{
    if (!(font_size > 0.0)) return {};
    if (max_locations && *max_locations == 0) return {};
    state.ensure_tin();

    std::vector<Candidate> out;
    std::size_t locations = 0;
    const auto& tris = state.tin().triangles;
    for (std::size_t k = 0; k < tris.size(); ++k) {
        ++state.stats().triangle_visits;
        bool any = false;
        for (int o : state.config().orientations) {
            const OrientedBox box = state.tag_box(tag, font_size, tris[k].centroid, o);
            ++state.stats().feasibility_tests;
            if (const auto m = state.feasible(box)) {
                out.push_back({tris[k].centroid, o, tris[k].area, k, *m, 0.0, box});
                any = true;
            }
        }
        if (any && max_locations && ++locations >= *max_locations) break;
    }

    for (Candidate& c : out) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const PlacedTag& p : state.placed())
            nearest = std::min(nearest, distance(c.location, p.box.center));
        c.min_distance = state.placed().empty() ? 0.0 : nearest;
    }
    return out;
}

std::vector<Candidate> filter_close(std::vector<Candidate> cands, std::span<const PlacedTag> placed)
{
    if (placed.empty() || cands.empty()) return cands;
    // One distance per location; orientations at the same location share it.
    double sum = 0.0;
    std::size_t locations = 0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (i > 0 && cands[i].triangle_rank == cands[i - 1].triangle_rank && cands[i].location == cands[i - 1].location)
            continue;
        sum += cands[i].min_distance;
        ++locations;
        lo = std::min(lo, cands[i].min_distance);
        hi = std::max(hi, cands[i].min_distance);
    }
    if (lo == hi) return cands;
    const double mean = sum / static_cast<double>(locations);
    std::erase_if(cands, [&](const Candidate& c) { return c.min_distance < mean; });
    return cands;
}

namespace {

std::size_t position_of(const std::vector<int>& order, int angle)
{
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), angle) - order.begin());
}

} // namespace

std::optional<std::size_t> select_best(std::span<const Candidate> cands, LayoutState& state, double font_size)
{
    if (cands.empty()) return std::nullopt;
    const LayoutConfig& cfg = state.config();

    if (cfg.mode == SelectionMode::baseline) {
        // Candidates arrive in triangle order, so the first one sits in the largest feasible triangle.
        const std::vector<int> pref = cfg.preference_order();
        std::size_t best = 0;
        for (std::size_t i = 1; i < cands.size() && cands[i].triangle_rank == cands[0].triangle_rank; ++i)
            if (position_of(pref, cands[i].orientation) < position_of(pref, cands[best].orientation)) best = i;
        return best;
    }

    const std::vector<SizedMark> base = state.marks();
    const std::size_t real = state.placed().size();
    std::vector<kernels::Hypothesis> hyps;
    hyps.reserve(cands.size());
    for (const Candidate& c : cands) {
        kernels::Hypothesis h{{c.location, font_size, c.polygon_index, false}, {}};
        for (std::size_t v = real; v < base.size(); ++v)
            if (c.box.contains(base[v].center)) h.removed.push_back(v);
        hyps.push_back(std::move(h));
    }
    const std::vector<double> raw = kernels::score_hypotheses_parallel(base, hyps);
    state.stats().hypotheses_scored += hyps.size();

    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const Candidate& c = cands[i];
        const double s = oriented_score(raw[i], cfg.orientation_weights.weight(c.orientation));
        bool better = s > best_score;
        if (!better && s == best_score) {
            const Candidate& b = cands[best];
            if (c.triangle_area != b.triangle_area) {
                better = c.triangle_area > b.triangle_area;
            } else if (c.orientation != b.orientation) {
                better = position_of(cfg.orientations, c.orientation) < position_of(cfg.orientations, b.orientation);
            } else if (c.location.y != b.location.y) {
                better = c.location.y < b.location.y;
            } else {
                better = c.location.x < b.location.x;
            }
        }
        if (better) {
            best = i;
            best_score = s;
        }
    }
    return best;
}

std::optional<double> shrink_to_fit(LayoutState& state, const TagSpec& tag, double start, double floor)
{
    for (double f = start; f >= floor; f -= 1.0)
        if (!candidates(state, tag, f, 1).empty()) return f;
    return std::nullopt;
}

double shrink_fmax(LayoutState& state, const TagSpec& first_tag)
{
    const auto f = shrink_to_fit(state, first_tag, state.config().f_max, state.config().f_min);
    if (!f) throw InfeasibleLayout("region too small: '" + first_tag.text + "' does not fit at any size >= F_min");
    return *f;
}

LayoutBundle place_all(const RegionSet& region, std::vector<TagSpec> tags, const LayoutConfig& config,
                       const LayoutObserver& observer)
{
    const auto started = std::chrono::steady_clock::now();
    config.validate();
    validate_region(region);
    for (const TagSpec& t : tags) {
        if (t.text.empty()) throw InputError("tag text must not be empty");
        if (!std::isfinite(t.weight) || t.weight < 0.0) throw InputError("tag '" + t.text + "' has a negative weight");
        if (t.fixed_font && !(*t.fixed_font > 0.0)) throw InputError("fixed font size must be positive");
    }
    std::stable_sort(tags.begin(), tags.end(), [](const TagSpec& a, const TagSpec& b) { return a.weight > b.weight; });

    const double scale = config.scale.value_or(initial_scale(region, config.screen));
    LayoutState state(region, config, scale);

    LayoutBundle bundle;
    bundle.region = region;
    bundle.config = config;
    bundle.scale = scale;
    bundle.effective_f_max = config.f_max;
    bundle.virtual_field.strategy = config.virtual_strategy;
    bundle.virtual_field.seed = config.seed;

    double f_max = config.f_max;
    double w_max = 0.0, w_min = 0.0;
    if (!tags.empty()) {
        const auto [lo, hi] = std::minmax_element(tags.begin(), tags.end(),
                                                  [](const TagSpec& a, const TagSpec& b) { return a.weight < b.weight; });
        w_min = lo->weight;
        w_max = hi->weight;

        std::vector<std::string> labels;
        for (const TagSpec& t : tags)
            labels.push_back(t.text);
        const double pitch_pt = grid_pitch(config.f_max, config.f_min, mean_label_length(labels));
        const double pitch_m = points_to_ground(pitch_pt, scale);
        VirtualField field = generate_virtual_field(region, config.virtual_strategy, pitch_m, config.seed);
        bundle.virtual_field.pitch_pt = pitch_pt;
        bundle.virtual_field.pitch_m = pitch_m;
        bundle.virtual_field.initial_count = field.marks.size();
        state.set_virtual_field(std::move(field));
    }
    const auto size_of = [&](const TagSpec& t) { return font_size_for_weight(t, w_max, w_min, f_max, config.f_min); };

    std::size_t iteration = 0;
    const auto notify = [&] {
        if (observer) observer({iteration, &state});
        ++iteration;
    };

    // Pinned tags first, at their given centers.
    const std::vector<int> preference = config.preference_order();
    std::vector<TagSpec> remaining;
    for (const TagSpec& t : tags) {
        if (!t.pinned_center) {
            remaining.push_back(t);
            continue;
        }
        const double f = size_of(t);
        bool done = false;
        for (int o : preference) {
            const OrientedBox box = state.tag_box(t, f, *t.pinned_center, o);
            if (const auto m = state.feasible(box)) {
                state.place(t, f, box, *m);
                done = true;
                break;
            }
        }
        if (!done) throw InfeasibleLayout("pinned tag '" + t.text + "' does not fit at its pinned location");
        notify();
    }

    const auto by_size = [&](const TagSpec& a, const TagSpec& b) { return size_of(a) > size_of(b); };
    std::stable_sort(remaining.begin(), remaining.end(), by_size);

    const std::optional<std::size_t> limit =
        config.mode == SelectionMode::baseline ? std::optional<std::size_t>{1}
        : config.strategy1                     ? std::optional<std::size_t>{config.n_t}
                                               : std::nullopt;
    bool first_sized = true;
    for (std::size_t next = 0; next < remaining.size(); ++next) {
        const TagSpec& tag = remaining[next];
        double f = size_of(tag);
        if (f < config.f_min) {
            bundle.unplaced.push_back({tag, f, "font size below F_min"});
            continue;
        }
        if (first_sized && !tag.fixed_font) {
            first_sized = false;
            const double fitted = shrink_fmax(state, tag);
            if (fitted != f_max) {
                f_max = fitted;
                bundle.warnings.push_back("F_max reduced to " + std::to_string(static_cast<int>(f_max)) +
                                          " pt so the largest tag fits");
                std::stable_sort(remaining.begin() + static_cast<std::ptrdiff_t>(next), remaining.end(), by_size);
                f = size_of(remaining[next]);
            }
        }
        const TagSpec& current = remaining[next];
        std::vector<Candidate> cands = candidates(state, current, f, limit);
        if (cands.empty() && current.fixed_font) {
            if (const auto fitted = shrink_to_fit(state, current, f - 1.0, config.f_min)) {
                f = *fitted;
                cands = candidates(state, current, f, limit);
            }
        }
        if (cands.empty()) {
            bundle.unplaced.push_back({current, f, "no feasible location"});
            continue;
        }
        if (config.mode == SelectionMode::index && config.strategy2) cands = filter_close(std::move(cands), state.placed());
        const auto chosen = select_best(cands, state, f);
        const Candidate& c = cands[*chosen];
        state.place(current, f, c.box, c.polygon_index);
        notify();
    }

    bundle.placed = state.placed();
    bundle.effective_f_max = f_max;
    bundle.stats = state.stats();
    bundle.virtual_field.remaining_count = state.virtual_field().marks.size();
    if (!tags.empty() && bundle.placed.empty()) bundle.warnings.push_back("no tag could be placed");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    bundle.metrics = to_metrics(evaluate(bundle));
    bundle.metrics.seconds = seconds;
    bundle.levels = level_views(bundle, config.level_ratios);
    return bundle;
}

} // namespace tagscape
