#pragma once

#include <iosfwd>

#include "slotjet/free_boundary.hpp"
#include "slotjet/grid.hpp"

namespace slotjet {

// Presentation-only rendering: walls, the interface, and psi level sets via
// marching squares.
void render_svg(const GridField& f, const FreeBoundaryCurve* curve,
                std::ostream& os);

}  // namespace slotjet
