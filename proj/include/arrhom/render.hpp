#ifndef ARRHOM_RENDER_HPP
#define ARRHOM_RENDER_HPP

#include <cstdint>
#include <string>

#include "arrhom/geometry.hpp"
#include "arrhom/local_system.hpp"

namespace arrhom {

/// SVG of the normalized real figure. Each line is one <line> element, each
/// intersection point one <circle> (resonant ones with class "resonant"),
/// bounded chambers are shaded <polygon>s and sharp pairs are listed as text.
std::string render_svg(const Arrangement& arr, const LocalSystem& ls, std::uint64_t seed = 1);

}  // namespace arrhom

#endif
