#pragma once

#include "tagscape/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tagscape {

// Sum of placed box areas over the region area.
double compactness(std::span<const PlacedTag> placed, const RegionSet& region);

struct EvalReport {
    std::size_t n = 0;
    double index = 0.0;
    double compactness = 0.0;
    std::optional<double> seconds;
    std::size_t n_horizontal = 0;
    SelectionMode mode = SelectionMode::index;
    LayoutConfig config;
    std::string corpus_id;
    std::string region_id;
};

// Index over placed tags only (virtual marks guide placement but are not part of the layout).
EvalReport evaluate(const LayoutBundle& bundle);
Metrics to_metrics(const EvalReport& report);

// Fingerprints used to refuse comparisons across different inputs.
std::string corpus_fingerprint(const LayoutBundle& bundle);
std::string region_fingerprint(const RegionSet& region);

struct ComparisonRow {
    std::string metric;
    double a = 0.0;
    double b = 0.0;
    double delta = 0.0;   // a - b
    bool higher_is_better = true;
};

struct Comparison {
    std::vector<ComparisonRow> rows; // N, I, C, t (t only when both reports carry it)
};

// Throws InputError when the reports come from different regions or tag corpora.
Comparison compare(const EvalReport& a, const EvalReport& b);
std::string format_table(const Comparison& c, std::string_view label_a = "a", std::string_view label_b = "b");

} // namespace tagscape
