#pragma once

// Hot loops of the layout engine. Each kernel has a serial reference and an OpenMP variant; the two
// produce bit-identical results for any thread count, and the serial one stays the test oracle.

#include "tagscape/autocorrelation.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace tagscape::kernels {

// Same result as overall_index(); rows of the weight matrix are summed in parallel.
IndexBreakdown overall_index_parallel(std::span<const SizedMark> marks);

// A tentative change to a frozen mark set: add one mark and drop some existing ones.
struct Hypothesis {
    SizedMark added;
    std::vector<std::size_t> removed; // indices into the base marks, ascending
};

// Reference scoring: materialize every hypothetical mark set and evaluate it from scratch.
std::vector<double> score_hypotheses_serial(std::span<const SizedMark> base, std::span<const Hypothesis> hyps);

// Frozen per-polygon moment sums that let one hypothesis be scored in O(n) instead of O(n^2).
class IncrementalIndex {
public:
    explicit IncrementalIndex(std::span<const SizedMark> base);

    // Overall index (scaled, clamped) of base minus removed plus added.
    double score(const Hypothesis& h) const;
    double base_index() const { return base_overall_; }

private:
    // Sub-index of one polygon after dropping `removed` (ascending, all in that polygon) and adding `added`.
    PolygonIndex updated(std::size_t poly, std::span<const std::size_t> removed, const SizedMark* added) const;

    struct Group {
        std::vector<std::size_t> members; // base indices, ascending
        double shift = 0.0;               // subtracted from sizes before accumulation
        double weight_sum = 0.0;          // sum over ordered pairs of w_ij
        double cross_sum = 0.0;           // sum w_ij y_i y_j
        double linear_sum = 0.0;          // sum w_ij y_i
        double y_sum = 0.0;
        double yy_sum = 0.0;
        std::map<double, std::size_t> size_counts;
        PolygonIndex base;
    };

    std::vector<SizedMark> marks_;
    std::vector<double> y_;       // shifted size per base mark
    std::vector<double> row_w_;   // sum_j w_ij
    std::vector<double> row_wy_;  // sum_j w_ij y_j
    std::map<std::size_t, Group> groups_;
    double base_overall_ = 0.0;
};

// Incremental scoring of every hypothesis, in parallel across hypotheses.
std::vector<double> score_hypotheses_parallel(std::span<const SizedMark> base, std::span<const Hypothesis> hyps);

} // namespace tagscape::kernels
