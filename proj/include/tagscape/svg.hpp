#pragma once

#include "tagscape/model.hpp"

#include <cstddef>
#include <string>

namespace tagscape {

// Renders one level of a bundle at its screen scale: the region outline plus one text element per
// visible tag, in placement order. Throws InputError when the level does not exist.
std::string export_svg(const LayoutBundle& bundle, std::size_t level);

} // namespace tagscape
