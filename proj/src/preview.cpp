#include "cavegen/preview.hpp"

#include <set>

namespace cavegen {

namespace {

char glyph_for(const OccupancyGrid& grid, int level, Cell p) {
    unsigned mask = neighbor_mask(grid, level, p);
    if (mask == 0) return 'o';
    switch (classify_mask(mask).type) {
    case TopoType::Deadend: return 'D';
    case TopoType::Pathway: return '=';
    case TopoType::Corner: return 'C';
    case TopoType::Junction: return 'J';
    case TopoType::Intersection: return 'I';
    }
    return '?';
}

// Fill colors per class, loosely dark-rock to bright-landmark.
const char* color_for(char glyph) {
    switch (glyph) {
    case 'D': return "#c0504d";
    case '=': return "#9f9f9f";
    case 'C': return "#4f81bd";
    case 'J': return "#f79646";
    case 'I': return "#9bbb59";
    default: return "#444444";
    }
}

} // namespace

std::string preview_text(const OccupancyGrid& grid) {
    const GridDims& d = grid.dims();
    std::set<std::pair<int, Cell>> shaft_cells;
    for (const ShaftLink& s : grid.shafts()) shaft_cells.insert({s.level, s.cell});

    std::string out;
    for (int level = 0; level < d.levels; ++level) {
        out += "level " + std::to_string(level) + "\n";
        for (int y = 0; y < d.rows; ++y) {
            std::string row(static_cast<std::size_t>(d.cols), ' ');
            for (int x = 0; x < d.cols; ++x) {
                Cell p{x, y};
                if (!grid.occupied(level, p)) continue;
                row[static_cast<std::size_t>(x)] =
                    shaft_cells.count({level, p}) ? 'S' : glyph_for(grid, level, p);
            }
            while (!row.empty() && row.back() == ' ') row.pop_back();
            out += row;
            out += "\n";
        }
        if (level + 1 < d.levels) out += "\n";
    }
    return out;
}

std::string preview_svg(const OccupancyGrid& grid) {
    const GridDims& d = grid.dims();
    const int cell = 12;
    const int gap = 2 * cell;
    const int level_w = d.cols * cell;
    const int width = d.levels * level_w + (d.levels - 1) * gap;
    const int height = d.rows * cell;

    std::set<std::pair<int, Cell>> shaft_cells;
    for (const ShaftLink& s : grid.shafts()) shaft_cells.insert({s.level, s.cell});

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#1b1b1b\"/>\n";

    for (int level = 0; level < d.levels; ++level) {
        int ox = level * (level_w + gap);
        for (int y = 0; y < d.rows; ++y) {
            for (int x = 0; x < d.cols; ++x) {
                Cell p{x, y};
                if (!grid.occupied(level, p)) continue;
                char g = glyph_for(grid, level, p);
                svg += "<rect x=\"" + std::to_string(ox + x * cell) + "\" y=\"" +
                       std::to_string(y * cell) + "\" width=\"" + std::to_string(cell) +
                       "\" height=\"" + std::to_string(cell) + "\" fill=\"" +
                       color_for(g) + "\"/>\n";
                if (shaft_cells.count({level, p})) {
                    svg += "<circle cx=\"" + std::to_string(ox + x * cell + cell / 2) +
                           "\" cy=\"" + std::to_string(y * cell + cell / 2) + "\" r=\"" +
                           std::to_string(cell / 3) +
                           "\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n";
                }
            }
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace cavegen
