#pragma once

#include <span>
#include <vector>

#include "cavegen/grid.hpp"
#include "cavegen/structural.hpp"

namespace cavegen {

// Shape of carved routes. harmonics picks the distortion of the straight
// constraint->objective segment: 0 leaves it straight, 1 bows it into a
// single arch, 2 bends it through a full sine period.
struct RouteDescriptor {
    int harmonics = 0;
    double amplitude_fraction = 0.25; // arch height as a fraction of min(rows, cols)
    double sampling_factor = 2.0;     // guide samples per unit of segment length

    void validate() const {
        if (harmonics < 0 || harmonics > 2)
            throw ValidationError("route: harmonics must be 0, 1 or 2");
        if (!(amplitude_fraction > 0.0) || amplitude_fraction > 0.5)
            throw ValidationError("route: amplitude_fraction must be in (0, 0.5]");
        if (!(sampling_factor >= 1.0))
            throw ValidationError("route: sampling_factor must be >= 1");
    }
};

// Normalized sample parameters along the c->o segment: ceil(factor * length)
// steps, endpoints included, monotone in [0, 1].
std::vector<double> segment_samples(Cell c, Cell o, double sampling_factor);

// Perpendicular displacement at parameter p: A * sin(harmonics * pi * p)
// with A = amplitude_fraction * min(rows, cols).
double route_offset(double p, const RouteDescriptor& d, const GridDims& dims);

// Cells of the distorted segment: each sample point displaced along the
// segment normal, floored, clamped into the grid. c and o are always
// included; duplicates removed keeping first occurrence.
std::vector<Cell> discretize_guide(Cell c, Cell o, const RouteDescriptor& d,
                                   const GridDims& dims);

struct CostMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> cost; // row-major

    double at(Cell p) const { return cost[static_cast<std::size_t>(p.y) * cols + p.x]; }
    double& at(Cell p) { return cost[static_cast<std::size_t>(p.y) * cols + p.x]; }
    bool in_bounds(Cell p) const { return p.x >= 0 && p.x < cols && p.y >= 0 && p.y < rows; }
};

inline constexpr double kDefaultPenalty = 100.0;

// Cost 1 on guide cells, penalty everywhere else. The penalty is finite so
// the graph stays connected when flooring leaves diagonal gaps in the guide.
CostMatrix build_cost_matrix(std::span<const Cell> guide, const GridDims& dims, double penalty);

// Cost that dominates any simple path of ordinary cells, used for junction
// guard cells: Dijkstra crosses one only if no alternative exists at all.
double blocking_cost(const CostMatrix& m, double penalty);

void block_cells(CostMatrix& m, std::span<const Cell> blocked, double penalty);

// Node-weighted Dijkstra: entering a cell charges that cell's cost, the start
// is free. Ties resolved by (distance, y, x) frontier order and up/down/left/
// right expansion, so results are reproducible. Returns the c->o cell list.
std::vector<Cell> shortest_path(const CostMatrix& m, Cell c, Cell o);

double path_cost(const CostMatrix& m, std::span<const Cell> path);

// Carves one level: stamps every bundle, then carves constraint->objective
// pairs bundle-major in constraint order (the plan's shaft connector pair
// goes first). Guard cells of all bundles get a blocking cost in every pair's
// matrix.
void generate_level(OccupancyGrid& grid, int level, const LevelPlan& plan,
                    const RouteDescriptor& d, double penalty);

} // namespace cavegen
