#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cavegen/errors.hpp"

namespace cavegen {

// Coordinate convention, fixed once for the whole project:
//   x = column (0..n-1), y = row (0..m-1), origin top-left, y grows downward.
//   "Down" therefore means +y and "right" means +x.
struct GridDims {
    int levels = 1; // l
    int rows = 0;   // m
    int cols = 0;   // n

    // Constraint sets need at least a 3x3 working area.
    void validate() const {
        if (levels < 1) throw ValidationError("grid dims: levels must be >= 1");
        if (rows < 2 || cols < 2) throw ValidationError("grid dims: need rows >= 2 and cols >= 2");
    }

    bool operator==(const GridDims&) const = default;
};

struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell&) const = default;
    // (y, x) order so sorting matches row-major scan order.
    bool operator<(const Cell& o) const { return y != o.y ? y < o.y : x < o.x; }
};

struct DirVec {
    int dx = 0;
    int dy = 0;

    bool operator==(const DirVec&) const = default;
};

// The four cardinals. Order (up, down, left, right) is load-bearing: it is the
// neighbor-mask bit order and the Dijkstra expansion order.
inline constexpr DirVec kUp{0, -1};
inline constexpr DirVec kDown{0, 1};
inline constexpr DirVec kLeft{-1, 0};
inline constexpr DirVec kRight{1, 0};
inline constexpr DirVec kCardinals[4] = {kUp, kDown, kLeft, kRight};

// Neighbor-mask bits, matching kCardinals order.
inline constexpr unsigned kMaskUp = 1u;
inline constexpr unsigned kMaskDown = 2u;
inline constexpr unsigned kMaskLeft = 4u;
inline constexpr unsigned kMaskRight = 8u;

inline Cell operator+(Cell c, DirVec v) { return {c.x + v.dx, c.y + v.dy}; }

// 90-degree clockwise rotation in this screen-style frame: (dx,dy) -> (-dy,dx).
// Maps up->right->down->left->up.
DirVec rotate_cw(DirVec v, int times);

// Same rotation applied to a neighbor mask.
unsigned rotate_mask_cw(unsigned mask, int times);

enum class TopoType : std::uint8_t { Deadend, Pathway, Corner, Junction, Intersection };

inline constexpr TopoType kTopoTypes[5] = {
    TopoType::Deadend, TopoType::Pathway, TopoType::Corner,
    TopoType::Junction, TopoType::Intersection,
};

const char* topo_name(TopoType t);

// Type plus the number of 90-degree clockwise rotations that map the type's
// canonical port pattern onto the observed neighbor mask. Canonical patterns:
// Deadend opens right, Pathway left-right, Corner right-down, Junction
// up-down-right, Intersection all four (rotation reported as 0).
struct Classification {
    TopoType type = TopoType::Deadend;
    int rotation = 0;

    bool operator==(const Classification&) const = default;
};

// Pure mask -> (type, rotation) table. Throws GenerationError for mask 0
// (an isolated cell cannot be tiled).
Classification classify_mask(unsigned mask);

// Open port directions of a type's canonical orientation, as a mask.
unsigned canonical_ports(TopoType t);

// Vertical link: `cell` is occupied on `level` and on `level + 1`.
struct ShaftLink {
    int level = 0;
    Cell cell;

    bool operator==(const ShaftLink&) const = default;
};

// Binary occupancy matrix, l levels of m x n cells. Cells only ever flip
// 0 -> 1 during generation; nothing un-carves a tunnel.
class OccupancyGrid {
public:
    explicit OccupancyGrid(GridDims dims);

    const GridDims& dims() const { return dims_; }

    bool in_bounds(Cell p) const {
        return p.x >= 0 && p.x < dims_.cols && p.y >= 0 && p.y < dims_.rows;
    }
    bool level_in_bounds(int level) const { return level >= 0 && level < dims_.levels; }

    bool occupied(int level, Cell p) const { return cells_[index(level, p)] != 0; }

    // Bounds-safe read: out-of-grid counts as empty.
    bool occupied_or_empty(int level, Cell p) const {
        return level_in_bounds(level) && in_bounds(p) && occupied(level, p);
    }

    void set(int level, Cell p) { cells_[index(level, p)] = 1; }

    std::size_t occupied_count(int level) const;
    std::size_t occupied_count() const;

    const std::vector<ShaftLink>& shafts() const { return shafts_; }

    // Validates the both-levels-occupied invariant.
    void add_shaft(ShaftLink s);

    // Raw shaft storage for deserialization (invariants checked per entry).
    void set_shafts(std::vector<ShaftLink> shafts);

    bool operator==(const OccupancyGrid&) const = default;

private:
    std::size_t index(int level, Cell p) const;

    GridDims dims_;
    std::vector<std::uint8_t> cells_;
    std::vector<ShaftLink> shafts_;
};

// Bit i of the result is set iff the cell at p + kCardinals[i] is in bounds
// and occupied. p itself must be in bounds.
unsigned neighbor_mask(const OccupancyGrid& grid, int level, Cell p);

// Classification of an occupied cell from its cardinal neighbors.
Classification classify_cell(const OccupancyGrid& grid, int level, Cell p);

// Sets every path cell to 1. Idempotent; never clears.
void union_path(OccupancyGrid& grid, int level, std::span<const Cell> path);

struct UnitCounts {
    int deadends = 0;
    int pathways = 0;
    int corners = 0;
    int junctions = 0;
    int intersections = 0;
    int loops = 0;

    bool operator==(const UnitCounts&) const = default;
};

// Per-type counts over one level's occupied cells, plus the number of
// independent cycles of the level's 4-connected occupancy graph
// (E - V + C with E undirected adjacent pairs, V occupied cells,
// C connected components).
UnitCounts count_units(const OccupancyGrid& grid, int level);

} // namespace cavegen
