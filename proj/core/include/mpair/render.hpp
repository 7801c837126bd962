#pragma once

#include <string>

#include "mpair/differential.hpp"

namespace mpair {

// Circles bottom-to-top in the order, B left of the axis, the rest right;
// one line per nonzero entry, labelled by its coefficient when it is not 1,
// doubled for the C-pair entries.
std::string render_ascii(const MDifferential& d);
std::string render_svg(const MDifferential& d);

} // namespace mpair
