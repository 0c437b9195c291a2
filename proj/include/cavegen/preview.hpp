#pragma once

#include <string>

#include "cavegen/grid.hpp"

namespace cavegen {

// Character map of the topology, one block per level. Empty cells print as
// spaces; occupied cells print their class glyph: D deadend, = pathway,
// C corner, J junction, I intersection, o isolated. A cell joined by a
// shaft to the next level shows S instead (the arrival cell on that level
// keeps its class glyph).
std::string preview_text(const OccupancyGrid& grid);

// Standalone SVG with one colored rect per occupied cell, levels side by
// side, shaft cells ringed.
std::string preview_svg(const OccupancyGrid& grid);

} // namespace cavegen
