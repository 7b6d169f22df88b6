#include "tagscape/kernels.hpp"

#include "tagscape/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tagscape::kernels {

namespace {

// Per-row sums of one polygon's weight matrix: sum_j w_ij and sum_j w_ij * values_j.
void row_sums(std::span<const SizedMark> marks, std::span<const std::size_t> members, std::span<const double> values,
              std::span<double> row_w, std::span<double> row_wv)
{
    const auto n = static_cast<long>(members.size());
#pragma omp parallel for schedule(static)
    for (long a = 0; a < n; ++a) {
        const SizedMark& mi = marks[members[a]];
        double w_sum = 0.0, wv_sum = 0.0;
        for (long b = 0; b < n; ++b) {
            if (b == a) continue;
            const SizedMark& mj = marks[members[b]];
            const double d = distance(mi.center, mj.center);
            // Exceptions must not escape the parallel region; flag with NaN and check afterwards.
            const double w = d == 0.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0 / d;
            w_sum += w;
            wv_sum += w * values[members[b]];
        }
        row_w[members[a]] = w_sum;
        row_wv[members[a]] = wv_sum;
    }
    for (std::size_t idx : members)
        if (std::isnan(row_w[idx]))
            throw GeometryError("coincident mark centers in polygon " + std::to_string(marks[idx].polygon_index));
}

} // namespace

IndexBreakdown overall_index_parallel(std::span<const SizedMark> marks)
{
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < marks.size(); ++i)
        groups[marks[i].polygon_index].push_back(i);

    std::vector<double> centered(marks.size(), 0.0), row_w(marks.size(), 0.0), row_c(marks.size(), 0.0);
    IndexBreakdown out;
    for (const auto& [poly, members] : groups) {
        const std::size_t n = members.size();
        const double first = marks[members.front()].size;
        const bool uniform =
            std::all_of(members.begin(), members.end(), [&](std::size_t i) { return marks[i].size == first; });
        if (n < 2 || uniform) {
            out.per_polygon.push_back({poly, n, 0.0});
            continue;
        }
        double mean = 0.0;
        for (std::size_t i : members)
            mean += marks[i].size;
        mean /= static_cast<double>(n);
        for (std::size_t i : members)
            centered[i] = marks[i].size - mean;
        row_sums(marks, members, centered, row_w, row_c);
        double weight_sum = 0.0, cross_sum = 0.0, variance_sum = 0.0;
        for (std::size_t i : members) {
            weight_sum += row_w[i];
            cross_sum += centered[i] * row_c[i];
            variance_sum += centered[i] * centered[i];
        }
        out.per_polygon.push_back({poly, n, -(static_cast<double>(n) / weight_sum) * (cross_sum / variance_sum)});
    }
    out.overall = combine_sub_indices(out.per_polygon);
    return out;
}

IncrementalIndex::IncrementalIndex(std::span<const SizedMark> base)
    : marks_(base.begin(), base.end()), y_(base.size(), 0.0), row_w_(base.size(), 0.0), row_wy_(base.size(), 0.0)
{
    for (std::size_t i = 0; i < marks_.size(); ++i)
        groups_[marks_[i].polygon_index].members.push_back(i);

    std::vector<PolygonIndex> parts;
    for (auto& [poly, g] : groups_) {
        const std::size_t n = g.members.size();
        for (std::size_t i : g.members)
            g.shift += marks_[i].size;
        g.shift /= static_cast<double>(n);
        for (std::size_t i : g.members) {
            y_[i] = marks_[i].size - g.shift;
            ++g.size_counts[marks_[i].size];
        }
        row_sums(marks_, g.members, y_, row_w_, row_wy_);
        for (std::size_t i : g.members) {
            g.weight_sum += row_w_[i];
            g.cross_sum += y_[i] * row_wy_[i];
            g.linear_sum += y_[i] * row_w_[i];
            g.y_sum += y_[i];
            g.yy_sum += y_[i] * y_[i];
        }
        g.base = {poly, n, 0.0};
        if (n >= 2 && g.size_counts.size() > 1) {
            const double mean = g.y_sum / static_cast<double>(n);
            const double num = g.cross_sum - 2.0 * mean * g.linear_sum + mean * mean * g.weight_sum;
            const double den = g.yy_sum - static_cast<double>(n) * mean * mean;
            g.base.value = -(static_cast<double>(n) / g.weight_sum) * (num / den);
        }
        parts.push_back(g.base);
    }
    base_overall_ = combine_sub_indices(parts);
}

PolygonIndex IncrementalIndex::updated(std::size_t poly, std::span<const std::size_t> removed,
                                      const SizedMark* added) const
{
    const auto found = groups_.find(poly);
    static const Group empty_group;
    const Group& g = found == groups_.end() ? empty_group : found->second;
    const double shift = found == groups_.end() && added ? added->size : g.shift;

    double rem_w = 0.0, rem_yw = 0.0, rem_wy = 0.0, rem_ywy = 0.0, rem_y = 0.0, rem_yy = 0.0;
    double rr_w = 0.0, rr_y = 0.0, rr_yy = 0.0;
    for (std::size_t a = 0; a < removed.size(); ++a) {
        const std::size_t i = removed[a];
        rem_w += row_w_[i];
        rem_yw += y_[i] * row_w_[i];
        rem_wy += row_wy_[i];
        rem_ywy += y_[i] * row_wy_[i];
        rem_y += y_[i];
        rem_yy += y_[i] * y_[i];
        for (std::size_t b = 0; b < removed.size(); ++b) {
            if (b == a) continue;
            const std::size_t j = removed[b];
            const double w = 1.0 / distance(marks_[i].center, marks_[j].center);
            rr_w += w;
            rr_y += w * y_[i];
            rr_yy += w * y_[i] * y_[j];
        }
    }

    const double ys = added ? added->size - shift : 0.0;
    double add_w = 0.0, add_wy = 0.0;
    if (added) {
        for (std::size_t j : g.members) {
            if (std::binary_search(removed.begin(), removed.end(), j)) continue;
            const double d = distance(added->center, marks_[j].center);
            if (d == 0.0) throw GeometryError("coincident mark centers in polygon " + std::to_string(poly));
            const double w = 1.0 / d;
            add_w += w;
            add_wy += w * y_[j];
        }
    }

    const std::size_t n = g.members.size() - removed.size() + (added ? 1 : 0);
    PolygonIndex out{poly, n, 0.0};

    // Degenerate when a single distinct size remains.
    std::size_t distinct = 0;
    bool added_seen = false;
    for (const auto& [size, count] : g.size_counts) {
        std::size_t left = count;
        for (std::size_t r : removed)
            if (marks_[r].size == size) --left;
        if (added && size == added->size) {
            ++left;
            added_seen = true;
        }
        if (left > 0) ++distinct;
    }
    if (added && !added_seen) ++distinct;

    if (n >= 2 && distinct > 1) {
        const double weight_sum = g.weight_sum - 2.0 * rem_w + rr_w + 2.0 * add_w;
        const double cross_sum = g.cross_sum - 2.0 * rem_ywy + rr_yy + 2.0 * ys * add_wy;
        const double linear_sum = g.linear_sum - rem_yw - rem_wy + rr_y + ys * add_w + add_wy;
        const double y_sum = g.y_sum - rem_y + ys;
        const double yy_sum = g.yy_sum - rem_yy + ys * ys;
        const double mean = y_sum / static_cast<double>(n);
        const double num = cross_sum - 2.0 * mean * linear_sum + mean * mean * weight_sum;
        const double den = yy_sum - static_cast<double>(n) * mean * mean;
        out.value = -(static_cast<double>(n) / weight_sum) * (num / den);
    }
    return out;
}

double IncrementalIndex::score(const Hypothesis& h) const
{
    // Removed marks split by polygon; each touched polygon is updated, the rest keep their base value.
    std::map<std::size_t, std::vector<std::size_t>> removed;
    for (std::size_t r : h.removed)
        removed[marks_[r].polygon_index].push_back(r);
    removed.try_emplace(h.added.polygon_index);

    std::vector<PolygonIndex> parts;
    parts.reserve(groups_.size() + 1);
    auto touched = removed.begin();
    for (const auto& [p, grp] : groups_) {
        for (; touched != removed.end() && touched->first < p; ++touched)
            parts.push_back(updated(touched->first, touched->second, &h.added));
        if (touched != removed.end() && touched->first == p) {
            parts.push_back(updated(p, touched->second, p == h.added.polygon_index ? &h.added : nullptr));
            ++touched;
        } else {
            parts.push_back(grp.base);
        }
    }
    // Only the added mark's polygon can be missing from the base groups.
    for (; touched != removed.end(); ++touched)
        parts.push_back(updated(touched->first, touched->second, &h.added));
    return combine_sub_indices(parts);
}

std::vector<double> score_hypotheses_parallel(std::span<const SizedMark> base, std::span<const Hypothesis> hyps)
{
    const IncrementalIndex index(base);
    std::vector<double> scores(hyps.size(), 0.0);
    std::vector<char> failed(hyps.size(), 0);
    const auto count = static_cast<long>(hyps.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long k = 0; k < count; ++k) {
        try {
            scores[k] = index.score(hyps[k]);
        } catch (const Error&) {
            failed[k] = 1;
        }
    }
    for (long k = 0; k < count; ++k)
        if (failed[k]) throw GeometryError("hypothesis " + std::to_string(k) + " places a mark on an existing one");
    return scores;
}

} // namespace tagscape::kernels
