// Grid core: neighbor masks, the 16-entry classification table, rotation
// algebra, union carving, and unit counting against brute-force oracles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "cavegen/grid.hpp"
#include "cavegen/rng.hpp"

using namespace cavegen;

namespace {

OccupancyGrid grid_from_rows(const std::vector<std::string>& rows) {
    GridDims d{1, static_cast<int>(rows.size()), static_cast<int>(rows[0].size())};
    OccupancyGrid g(d);
    for (int y = 0; y < d.rows; ++y)
        for (int x = 0; x < d.cols; ++x)
            if (rows[y][x] == '#') g.set(0, {x, y});
    return g;
}

// Independent loop-count oracle: spanning forest by DFS, every non-tree
// edge closes exactly one independent cycle.
int cycle_count_oracle(const OccupancyGrid& g, int level) {
    const GridDims& d = g.dims();
    std::vector<char> visited(static_cast<std::size_t>(d.rows) * d.cols, 0);
    auto id = [&](Cell c) { return c.y * d.cols + c.x; };

    int non_tree_edges = 0;
    for (int y = 0; y < d.rows; ++y) {
        for (int x = 0; x < d.cols; ++x) {
            Cell root{x, y};
            if (!g.occupied(level, root) || visited[id(root)]) continue;
            std::vector<std::pair<Cell, Cell>> stack{{root, {-9, -9}}};
            visited[id(root)] = 1;
            while (!stack.empty()) {
                auto [cur, from] = stack.back();
                stack.pop_back();
                for (DirVec v : kCardinals) {
                    Cell nb = cur + v;
                    if (!g.occupied_or_empty(level, nb)) continue;
                    if (nb == from) continue;
                    if (visited[id(nb)]) {
                        ++non_tree_edges; // counted twice (once per endpoint)
                    } else {
                        visited[id(nb)] = 1;
                        stack.push_back({nb, cur});
                    }
                }
            }
        }
    }
    return non_tree_edges / 2;
}

} // namespace

TEST_CASE("classification covers all 16 masks per the hand table") {
    struct Row {
        unsigned mask;
        TopoType type;
        int rotation;
    };
    // Bit order: up=1, down=2, left=4, right=8.
    const Row table[] = {
        {1, TopoType::Deadend, 3},  {2, TopoType::Deadend, 1},
        {4, TopoType::Deadend, 2},  {8, TopoType::Deadend, 0},
        {3, TopoType::Pathway, 1},  {12, TopoType::Pathway, 0},
        {10, TopoType::Corner, 0},  {6, TopoType::Corner, 1},
        {5, TopoType::Corner, 2},   {9, TopoType::Corner, 3},
        {11, TopoType::Junction, 0}, {14, TopoType::Junction, 1},
        {7, TopoType::Junction, 2},  {13, TopoType::Junction, 3},
        {15, TopoType::Intersection, 0},
    };
    for (const Row& r : table) {
        CAPTURE(r.mask);
        Classification c = classify_mask(r.mask);
        CHECK(c.type == r.type);
        CHECK(c.rotation == r.rotation);
        // The rotated canonical pattern must reproduce the mask.
        CHECK(rotate_mask_cw(canonical_ports(c.type), c.rotation) == r.mask);
    }
    CHECK_THROWS_AS(classify_mask(0), GenerationError);
}

TEST_CASE("direction rotation is the quarter-turn (dx,dy) -> (-dy,dx)") {
    CHECK(rotate_cw(kUp, 1) == kRight);
    CHECK(rotate_cw(kRight, 1) == kDown);
    CHECK(rotate_cw(kDown, 1) == kLeft);
    CHECK(rotate_cw(kLeft, 1) == kUp);
    for (DirVec v : kCardinals) CHECK(rotate_cw(v, 4) == v);
    // Mask rotation agrees with vector rotation bit by bit.
    for (int i = 0; i < 4; ++i) {
        DirVec rotated = rotate_cw(kCardinals[i], 1);
        int j = static_cast<int>(std::find(std::begin(kCardinals), std::end(kCardinals), rotated) -
                                 std::begin(kCardinals));
        CHECK(rotate_mask_cw(1u << i, 1) == (1u << j));
    }
}

TEST_CASE("neighbor_mask reads the four cardinals") {
    OccupancyGrid g(GridDims{1, 5, 5});
    g.set(0, {2, 2});
    CHECK(neighbor_mask(g, 0, {2, 2}) == 0);

    g.set(0, {1, 2});
    g.set(0, {3, 2});
    CHECK(neighbor_mask(g, 0, {2, 2}) == (kMaskLeft | kMaskRight));

    // Corner of a 2x2 block sees exactly two perpendicular neighbors.
    OccupancyGrid block(GridDims{1, 4, 4});
    for (Cell c : {Cell{1, 1}, Cell{2, 1}, Cell{1, 2}, Cell{2, 2}}) block.set(0, c);
    unsigned m = neighbor_mask(block, 0, {1, 1});
    CHECK(m == (kMaskRight | kMaskDown));
    CHECK(classify_mask(m).type == TopoType::Corner);

    CHECK_THROWS_AS(neighbor_mask(g, 0, {-1, 0}), ValidationError);
}

TEST_CASE("rotating the grid by 90 degrees shifts rotation and keeps type") {
    Rng rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = static_cast<int>(rng.uniform_int(3, 8));
        int cols = static_cast<int>(rng.uniform_int(3, 8));
        OccupancyGrid g(GridDims{1, rows, cols});
        for (int y = 0; y < rows; ++y)
            for (int x = 0; x < cols; ++x)
                if (rng.uniform_real() < 0.5) g.set(0, {x, y});

        // Clockwise quarter turn of the level: (x, y) -> (rows-1-y, x).
        OccupancyGrid r(GridDims{1, cols, rows});
        for (int y = 0; y < rows; ++y)
            for (int x = 0; x < cols; ++x)
                if (g.occupied(0, {x, y})) r.set(0, {rows - 1 - y, x});

        for (int y = 0; y < rows; ++y) {
            for (int x = 0; x < cols; ++x) {
                Cell p{x, y};
                if (!g.occupied(0, p) || neighbor_mask(g, 0, p) == 0) continue;
                Classification before = classify_cell(g, 0, p);
                Classification after = classify_cell(r, 0, {rows - 1 - y, x});
                CHECK(after.type == before.type);
                switch (before.type) {
                    case TopoType::Pathway:
                        CHECK(after.rotation == (before.rotation + 1) % 2);
                        break;
                    case TopoType::Intersection:
                        CHECK(after.rotation == 0);
                        break;
                    default:
                        CHECK(after.rotation == (before.rotation + 1) % 4);
                }
            }
        }
    }
}

TEST_CASE("union_path carves monotonically and is order-insensitive") {
    std::vector<Cell> a{{1, 1}, {1, 2}};
    std::vector<Cell> b{{1, 2}, {2, 2}, {3, 2}};

    OccupancyGrid g1(GridDims{1, 5, 5});
    union_path(g1, 0, a);
    CHECK(g1.occupied_count(0) == 2);
    union_path(g1, 0, a); // idempotent
    CHECK(g1.occupied_count(0) == 2);
    union_path(g1, 0, b);

    OccupancyGrid g2(GridDims{1, 5, 5});
    union_path(g2, 0, b);
    union_path(g2, 0, a);
    CHECK(g1 == g2);

    std::set<Cell> cells(a.begin(), a.end());
    cells.insert(b.begin(), b.end());
    CHECK(g1.occupied_count(0) == cells.size());
}

TEST_CASE("count_units matches hand-enumerated shapes") {
    SUBCASE("straight 1x5 row") {
        OccupancyGrid g = grid_from_rows({".....", "#####", "....."});
        UnitCounts u = count_units(g, 0);
        CHECK(u == UnitCounts{2, 3, 0, 0, 0, 0});
    }
    SUBCASE("3x3 ring has one loop") {
        OccupancyGrid g = grid_from_rows({"###", "#.#", "###"});
        UnitCounts u = count_units(g, 0);
        CHECK(u.loops == 1);
        CHECK(u.corners == 4);
        CHECK(u.pathways == 4);
    }
    SUBCASE("plus shape") {
        OccupancyGrid g = grid_from_rows({".#.", "###", ".#."});
        UnitCounts u = count_units(g, 0);
        CHECK(u.intersections == 1);
        CHECK(u.deadends == 4);
        CHECK(u.loops == 0);
    }
    SUBCASE("solid 3x3 block has four loops") {
        OccupancyGrid g = grid_from_rows({"###", "###", "###"});
        CHECK(count_units(g, 0).loops == 4);
    }
    SUBCASE("two separate dominoes: no loops, two components") {
        OccupancyGrid g = grid_from_rows({"##...", ".....", "...##"});
        UnitCounts u = count_units(g, 0);
        CHECK(u.deadends == 4);
        CHECK(u.loops == 0);
    }
}

TEST_CASE("loop count equals the spanning-forest cycle oracle on random grids") {
    Rng rng(987);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = static_cast<int>(rng.uniform_int(2, 8));
        int cols = static_cast<int>(rng.uniform_int(2, 8));
        OccupancyGrid g(GridDims{1, rows, cols});
        double density = rng.uniform_real(0.2, 0.8);
        for (int y = 0; y < rows; ++y)
            for (int x = 0; x < cols; ++x)
                if (rng.uniform_real() < density) g.set(0, {x, y});
        CAPTURE(trial);
        CHECK(count_units(g, 0).loops == cycle_count_oracle(g, 0));
    }
}

TEST_CASE("loop count never decreases as cells are added") {
    Rng rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        OccupancyGrid g(GridDims{1, 6, 6});
        int prev = 0;
        for (int step = 0; step < 24; ++step) {
            g.set(0, {static_cast<int>(rng.uniform_int(0, 5)),
                      static_cast<int>(rng.uniform_int(0, 5))});
            int loops = count_units(g, 0).loops;
            CHECK(loops >= prev);
            prev = loops;
        }
    }
}

TEST_CASE("dims and shaft invariants are enforced") {
    CHECK_THROWS_AS(OccupancyGrid(GridDims{0, 5, 5}), ValidationError);
    CHECK_THROWS_AS(OccupancyGrid(GridDims{1, 1, 5}), ValidationError);

    OccupancyGrid g(GridDims{2, 4, 4});
    g.set(0, {1, 1});
    CHECK_THROWS_AS(g.add_shaft({0, {1, 1}}), ValidationError); // lower level empty
    g.set(1, {1, 1});
    g.add_shaft({0, {1, 1}});
    CHECK(g.shafts().size() == 1);
    CHECK_THROWS_AS(g.add_shaft({1, {1, 1}}), ValidationError); // no level 2
}
