#pragma once

#include "tagscape/geometry.hpp"
#include "tagscape/model.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tagscape {

// Irregular main polygon with one hole, plus one island, in projected meters.
RegionSet demo_region();

// `n` unique words with integer weights drawn uniformly from 1..100, sorted by descending weight.
std::vector<TagSpec> demo_corpus(std::uint64_t seed, std::size_t n = 100);

// All nine orientations with horizontal weighted 2, index mode, grid virtual field.
LayoutConfig demo_config(std::uint64_t seed);

} // namespace tagscape
