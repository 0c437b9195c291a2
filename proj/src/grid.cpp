#include "cavegen/grid.hpp"

#include <string>

namespace cavegen {

DirVec rotate_cw(DirVec v, int times) {
    for (int i = 0; i < (times & 3); ++i) {
        v = DirVec{-v.dy, v.dx};
    }
    return v;
}

unsigned rotate_mask_cw(unsigned mask, int times) {
    for (int i = 0; i < (times & 3); ++i) {
        unsigned next = 0;
        if (mask & kMaskUp) next |= kMaskRight;
        if (mask & kMaskRight) next |= kMaskDown;
        if (mask & kMaskDown) next |= kMaskLeft;
        if (mask & kMaskLeft) next |= kMaskUp;
        mask = next;
    }
    return mask;
}

const char* topo_name(TopoType t) {
    switch (t) {
        case TopoType::Deadend: return "deadend";
        case TopoType::Pathway: return "pathway";
        case TopoType::Corner: return "corner";
        case TopoType::Junction: return "junction";
        case TopoType::Intersection: return "intersection";
    }
    return "?";
}

unsigned canonical_ports(TopoType t) {
    switch (t) {
        case TopoType::Deadend: return kMaskRight;
        case TopoType::Pathway: return kMaskLeft | kMaskRight;
        case TopoType::Corner: return kMaskRight | kMaskDown;
        case TopoType::Junction: return kMaskUp | kMaskDown | kMaskRight;
        case TopoType::Intersection: return kMaskUp | kMaskDown | kMaskLeft | kMaskRight;
    }
    return 0;
}

Classification classify_mask(unsigned mask) {
    if (mask == 0 || mask > 15) {
        throw GenerationError("classify: isolated cell (no occupied cardinal neighbor)");
    }
    // For each type, find the rotation whose rotated canonical pattern equals
    // the mask. Masks partition cleanly: popcount 1 -> Deadend, opposite
    // pair -> Pathway, perpendicular pair -> Corner, 3 -> Junction, 4 -> I.
    for (TopoType t : kTopoTypes) {
        unsigned canon = canonical_ports(t);
        for (int rot = 0; rot < 4; ++rot) {
            if (rotate_mask_cw(canon, rot) == mask) return {t, rot};
        }
    }
    throw GenerationError("classify: unreachable mask " + std::to_string(mask));
}

OccupancyGrid::OccupancyGrid(GridDims dims) : dims_(dims) {
    dims_.validate();
    cells_.assign(static_cast<std::size_t>(dims_.levels) * dims_.rows * dims_.cols, 0);
}

std::size_t OccupancyGrid::index(int level, Cell p) const {
    if (!level_in_bounds(level) || !in_bounds(p)) {
        throw ValidationError("grid access out of bounds: level " + std::to_string(level) +
                              " cell (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
    }
    return (static_cast<std::size_t>(level) * dims_.rows + p.y) * dims_.cols + p.x;
}

std::size_t OccupancyGrid::occupied_count(int level) const {
    std::size_t total = 0;
    for (int y = 0; y < dims_.rows; ++y)
        for (int x = 0; x < dims_.cols; ++x)
            total += occupied(level, {x, y}) ? 1 : 0;
    return total;
}

std::size_t OccupancyGrid::occupied_count() const {
    std::size_t total = 0;
    for (int k = 0; k < dims_.levels; ++k) total += occupied_count(k);
    return total;
}

void OccupancyGrid::add_shaft(ShaftLink s) {
    if (s.level < 0 || s.level + 1 >= dims_.levels) {
        throw ValidationError("shaft level " + std::to_string(s.level) + " has no level below");
    }
    if (!occupied(s.level, s.cell) || !occupied(s.level + 1, s.cell)) {
        throw ValidationError("shaft cell must be occupied on both adjacent levels");
    }
    shafts_.push_back(s);
}

void OccupancyGrid::set_shafts(std::vector<ShaftLink> shafts) {
    shafts_.clear();
    shafts_.reserve(shafts.size());
    for (const ShaftLink& s : shafts) add_shaft(s);
}

unsigned neighbor_mask(const OccupancyGrid& grid, int level, Cell p) {
    if (!grid.level_in_bounds(level) || !grid.in_bounds(p)) {
        throw ValidationError("neighbor_mask: cell out of bounds");
    }
    unsigned mask = 0;
    for (int i = 0; i < 4; ++i) {
        if (grid.occupied_or_empty(level, p + kCardinals[i])) mask |= 1u << i;
    }
    return mask;
}

Classification classify_cell(const OccupancyGrid& grid, int level, Cell p) {
    if (!grid.occupied(level, p)) {
        throw ValidationError("classify_cell: cell not occupied");
    }
    return classify_mask(neighbor_mask(grid, level, p));
}

void union_path(OccupancyGrid& grid, int level, std::span<const Cell> path) {
    for (Cell c : path) grid.set(level, c);
}

UnitCounts count_units(const OccupancyGrid& grid, int level) {
    const GridDims& d = grid.dims();
    UnitCounts counts;

    int vertices = 0;
    int edges = 0;
    // Union-find over cell indices for the component count.
    std::vector<int> parent(static_cast<std::size_t>(d.rows) * d.cols);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };

    for (int y = 0; y < d.rows; ++y) {
        for (int x = 0; x < d.cols; ++x) {
            Cell p{x, y};
            if (!grid.occupied(level, p)) continue;
            ++vertices;

            unsigned mask = neighbor_mask(grid, level, p);
            if (mask != 0) {
                Classification c = classify_mask(mask);
                switch (c.type) {
                    case TopoType::Deadend: ++counts.deadends; break;
                    case TopoType::Pathway: ++counts.pathways; break;
                    case TopoType::Corner: ++counts.corners; break;
                    case TopoType::Junction: ++counts.junctions; break;
                    case TopoType::Intersection: ++counts.intersections; break;
                }
            }

            // Count each undirected adjacency once (right and down only).
            for (DirVec v : {kRight, kDown}) {
                Cell q = p + v;
                if (!grid.occupied_or_empty(level, q)) continue;
                ++edges;
                int a = find(y * d.cols + x);
                int b = find(q.y * d.cols + q.x);
                if (a != b) parent[a] = b;
            }
        }
    }

    int components = 0;
    for (int y = 0; y < d.rows; ++y)
        for (int x = 0; x < d.cols; ++x)
            if (grid.occupied(level, {x, y}) && find(y * d.cols + x) == y * d.cols + x)
                ++components;

    counts.loops = edges - vertices + components;
    return counts;
}

} // namespace cavegen
