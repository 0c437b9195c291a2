#include "cavegen/structural.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace cavegen {

namespace {

constexpr int kPlacementAttempts = 64;
constexpr int kObjectiveAttempts = 16;

int clamp_int(int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); }

// Deterministic escape hatch: walk a cell one step at a time toward the grid
// center until the predicate stops objecting. Bounded; callers treat
// exhaustion as a failed placement.
template <typename Bad>
Cell nudge_until_ok(Cell p, const GridDims& dims, Bad bad) {
    Cell center{dims.cols / 2, dims.rows / 2};
    for (int i = 0; i < dims.rows + dims.cols && bad(p); ++i) {
        int dx = center.x - p.x;
        int dy = center.y - p.y;
        if (dx == 0 && dy == 0) {
            p.x = clamp_int(p.x + 1, 0, dims.cols - 1);
        } else if (std::abs(dx) >= std::abs(dy)) {
            p.x += dx > 0 ? 1 : -1;
        } else {
            p.y += dy > 0 ? 1 : -1;
        }
    }
    if (bad(p)) throw GenerationError("structural: no free cell near grid center");
    return p;
}

} // namespace

const char* unit_name(UnitKind u) {
    switch (u) {
        case UnitKind::Junction: return "junction";
        case UnitKind::Loop: return "loop";
        case UnitKind::Intersection: return "intersection";
    }
    return "?";
}

std::vector<DirVec> offsets_for(UnitKind unit) {
    std::vector<DirVec> out{kUp, kDown, kRight};
    if (unit == UnitKind::Junction) return out;
    out.push_back(kLeft);
    if (unit == UnitKind::Intersection) return out;
    // Loop: full ring, diagonals clockwise from up-right.
    out.insert(out.end(), {DirVec{1, -1}, DirVec{1, 1}, DirVec{-1, 1}, DirVec{-1, -1}});
    return out;
}

std::vector<DirVec> rotate_offsets(std::vector<DirVec> offsets, int rotation) {
    for (DirVec& v : offsets) v = rotate_cw(v, rotation);
    return offsets;
}

std::vector<Cell> constraint_cells(Cell start, UnitKind unit, int rotation) {
    std::vector<Cell> out;
    for (DirVec v : rotate_offsets(offsets_for(unit), rotation)) out.push_back(start + v);
    return out;
}

std::vector<Cell> stamp_cells(Cell start, UnitKind unit, int rotation) {
    std::vector<Cell> out{start};
    std::vector<Cell> arms = constraint_cells(start, unit, rotation);
    out.insert(out.end(), arms.begin(), arms.end());
    return out;
}

Cell objective_from_draws(Cell c, bool push_x, int direction, int distance, int jitter,
                          const GridDims& dims) {
    auto place = [&](int dir) {
        Cell o = push_x ? Cell{c.x + dir * distance, c.y + jitter}
                        : Cell{c.x + jitter, c.y + dir * distance};
        o.x = clamp_int(o.x, 0, dims.cols - 1);
        o.y = clamp_int(o.y, 0, dims.rows - 1);
        return o;
    };

    Cell o = place(direction);
    if (o == c) o = place(-direction); // clamped back onto c: push the other way
    if (o == c) {
        o = nudge_until_ok(c, dims, [&](Cell p) { return p == c; });
    }
    return o;
}

Cell sample_objective(Cell c, Cell s, const GridDims& dims, Rng& rng) {
    bool vertical_arm = (c.x == s.x && c.y != s.y);   // push horizontally
    bool horizontal_arm = (c.y == s.y && c.x != s.x); // push vertically
    bool push_x;
    if (vertical_arm) {
        push_x = true;
    } else if (horizontal_arm) {
        push_x = false;
    } else {
        // Diagonal arms (loops) match neither case; pick the axis at random.
        push_x = rng.uniform_int(0, 1) == 0;
    }

    int direction = rng.uniform_int(0, 1) == 0 ? -1 : 1;
    int distance = static_cast<int>(rng.uniform_int(2, push_x ? dims.cols : dims.rows));
    int jitter = static_cast<int>(rng.uniform_int(-2, 2));
    return objective_from_draws(c, push_x, direction, distance, jitter, dims);
}

LevelPlan distribute_level(const GridDims& dims, const StructuralRequest& request, Rng& rng,
                           std::optional<Cell> root_hint) {
    dims.validate();
    LevelPlan plan;

    std::set<Cell> guard_cells;
    std::set<Cell> centers;
    // Cells that are (or will be) occupied: stamps, objectives, shaft roots.
    // New guards must not land on any of them.
    std::set<Cell> committed;
    std::set<Cell> loop_stamps; // loop blocks stay disjoint so each adds cycles

    if (root_hint) committed.insert(*root_hint);

    auto stamp_ok = [&](const std::vector<Cell>& stamp, UnitKind unit) {
        for (Cell c : stamp) {
            if (c.x < 0 || c.x >= dims.cols || c.y < 0 || c.y >= dims.rows) return false;
            if (guard_cells.count(c)) return false;
            if (unit == UnitKind::Loop && loop_stamps.count(c)) return false;
        }
        return true;
    };

    auto place_unit = [&](UnitKind unit, std::optional<Cell> forced_root) {
        Cell s;
        int rotation = 0;
        std::vector<Cell> stamp;
        std::vector<Cell> guards;
        bool placed = false;
        for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
            if (forced_root) {
                // All offsets fit within a one-cell margin.
                s = {clamp_int(forced_root->x, 1, dims.cols - 2),
                     clamp_int(forced_root->y, 1, dims.rows - 2)};
            } else {
                s = {static_cast<int>(rng.uniform_int(1, dims.cols - 2)),
                     static_cast<int>(rng.uniform_int(1, dims.rows - 2))};
            }
            rotation = unit == UnitKind::Junction ? static_cast<int>(rng.uniform_int(0, 3)) : 0;

            stamp = stamp_cells(s, unit, rotation);
            guards.clear();
            if (unit == UnitKind::Junction) {
                guards.push_back(s + rotate_cw(kLeft, rotation));
            }

            bool ok = !centers.count(s) && stamp_ok(stamp, unit) &&
                      std::none_of(guards.begin(), guards.end(),
                                   [&](Cell g) { return committed.count(g) != 0; });
            if (forced_root && !ok && unit == UnitKind::Junction) {
                continue; // re-draw the rotation; the root position is fixed
            }
            placed = ok;
        }
        if (!placed) {
            throw GenerationError(std::string("structural: could not place ") + unit_name(unit) +
                                  " after " + std::to_string(kPlacementAttempts) + " attempts");
        }

        // Guards go live before objective sampling so the bundle's own
        // objectives avoid them too.
        for (Cell g : guards) guard_cells.insert(g);

        ConstraintBundle bundle;
        bundle.start = s;
        bundle.unit = unit;
        bundle.rotation = rotation;
        bundle.stamp = stamp;
        bundle.guards = guards;
        bundle.constraints = constraint_cells(s, unit, rotation);
        for (Cell c : bundle.constraints) {
            Cell o{};
            bool found = false;
            for (int attempt = 0; attempt < kObjectiveAttempts && !found; ++attempt) {
                o = sample_objective(c, s, dims, rng);
                found = guard_cells.count(o) == 0;
            }
            if (!found) {
                o = nudge_until_ok(o, dims,
                                   [&](Cell p) { return p == c || guard_cells.count(p) != 0; });
            }
            bundle.objectives.push_back(o);
            committed.insert(o);
        }

        centers.insert(s);
        for (Cell c : stamp) {
            committed.insert(c);
            if (unit == UnitKind::Loop) loop_stamps.insert(c);
        }
        plan.bundles.push_back(std::move(bundle));
    };

    struct Slot {
        UnitKind kind;
        int count;
    };
    const Slot slots[] = {{UnitKind::Loop, request.loops},
                          {UnitKind::Junction, request.junctions},
                          {UnitKind::Intersection, request.intersections}};

    bool first = true;
    auto root_for_next = [&]() -> std::optional<Cell> {
        if (!first || !root_hint) return std::nullopt;
        return root_hint;
    };

    for (const Slot& slot : slots) {
        for (int i = 0; i < slot.count; ++i) {
            place_unit(slot.kind, root_for_next());
            first = false;
        }
    }
    for (int i = 0; i < request.random_fill; ++i) {
        auto kind = static_cast<UnitKind>(rng.uniform_int(0, 2));
        place_unit(kind, root_for_next());
        first = false;
    }
    if (plan.bundles.empty()) {
        // Nothing requested: the level still needs objectives and classifiable
        // cells, so it gets a lone junction.
        place_unit(UnitKind::Junction, root_for_next());
    }

    if (root_hint && plan.bundles.front().start != *root_hint) {
        plan.connector = {{*root_hint, plan.bundles.front().start}};
    }
    return plan;
}

std::vector<LevelPlan> distribute(const GridDims& dims,
                                  const std::vector<StructuralRequest>& per_level, Rng& rng) {
    if (static_cast<int>(per_level.size()) != dims.levels) {
        throw ValidationError("distribute: request list length must equal dims.levels");
    }
    std::vector<LevelPlan> plans;
    plans.reserve(per_level.size());
    for (const StructuralRequest& request : per_level) {
        plans.push_back(distribute_level(dims, request, rng));
    }
    return plans;
}

} // namespace cavegen
