#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cavegen/grid.hpp"
#include "cavegen/rng.hpp"

namespace cavegen {

// Structural units a user can request. Each spawns a constraint node set that
// forces the corresponding feature into the final topology.
enum class UnitKind : std::uint8_t { Junction, Loop, Intersection };

const char* unit_name(UnitKind u);

// One placed structural unit: a start cell, the cells stamped around it, and
// one objective per constraint cell. Paths are later carved constraint ->
// objective, which is what grows the unit into the wider tunnel network.
struct ConstraintBundle {
    Cell start;
    UnitKind unit = UnitKind::Junction;
    int rotation = 0; // nonzero only for junctions; loops/intersections are symmetric
    std::vector<Cell> constraints; // arm cells, paired index-wise with objectives
    std::vector<Cell> objectives;
    std::vector<Cell> stamp; // start + arms; the cells written into the grid
    // Cells that must stay empty for the unit to keep its class. A junction
    // center with its fourth neighbor filled silently becomes an intersection,
    // so the missing-arm cell is fenced off from later stamps and given a
    // prohibitive carving cost.
    std::vector<Cell> guards;
};

// Resolved per-level minimum counts. random_fill adds that many units of
// random kind on top of the minimums.
struct StructuralRequest {
    int loops = 0;
    int junctions = 0;
    int intersections = 0;
    int random_fill = 0;

    int total() const { return loops + junctions + intersections + random_fill; }
};

struct LevelPlan {
    std::vector<ConstraintBundle> bundles;
    // Set when a shaft root had to be moved off the grid margin: carve this
    // (from, to) pair first so the shaft cell stays connected.
    std::optional<std::pair<Cell, Cell>> connector;
};

// Offset sets per unit kind, in canonical orientation and frozen order:
// junction {up, down, right}; intersection adds left; loop adds the four
// diagonals (clockwise from up-right). The order is the objective draw order,
// so it is part of the determinism contract.
std::vector<DirVec> offsets_for(UnitKind unit);

// Each vector turned by rotation quarter-turns clockwise. Only junctions are
// ever rotated; loops and intersections are rotationally symmetric.
std::vector<DirVec> rotate_offsets(std::vector<DirVec> offsets, int rotation);

// Arm cells: start + each rotated offset.
std::vector<Cell> constraint_cells(Cell start, UnitKind unit, int rotation);

// Everything stamped for the unit: {start} + arms. For loops this is the
// full 3x3 block, which keeps the diagonal arms cardinally connected.
std::vector<Cell> stamp_cells(Cell start, UnitKind unit, int rotation);

// Deterministic core of objective placement: displace c by direction*distance
// along the push axis and by jitter on the other, clamp into the grid, and
// resolve collisions with c (reflect the direction, then walk toward the grid
// center). Never returns c.
Cell objective_from_draws(Cell c, bool push_x, int direction, int distance, int jitter,
                          const GridDims& dims);

// Random far partner of constraint cell c. Arms vertical of the start are
// pushed a long way horizontally (and vice versa), with a small jitter on the
// other axis. Draw order per call: [axis if c is diagonal to s], direction,
// distance in [2, cols or rows], jitter in [-2, 2].
Cell sample_objective(Cell c, Cell s, const GridDims& dims, Rng& rng);

// Places all units of one level. Placement order is loops, junctions,
// intersections, then random fill; each unit draws (s.x, s.y, [rotation],
// objectives) in that order. A level whose request is all-zero receives one
// synthesized junction so it still has objectives (shaft anchors) and
// classifiable cells. root_hint re-roots the first bundle at (or next to) a
// shaft cell coming down from the level above.
LevelPlan distribute_level(const GridDims& dims, const StructuralRequest& request, Rng& rng,
                           std::optional<Cell> root_hint = std::nullopt);

// All levels from one stream, no shaft roots; level-major order.
std::vector<LevelPlan> distribute(const GridDims& dims,
                                  const std::vector<StructuralRequest>& per_level, Rng& rng);

} // namespace cavegen
