#include "cavegen/pathgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <tuple>

namespace cavegen {

std::vector<double> segment_samples(Cell c, Cell o, double sampling_factor) {
    if (c == o) throw ValidationError("segment_samples: degenerate pair (c equals o)");
    double length = std::hypot(o.x - c.x, o.y - c.y);
    int steps = static_cast<int>(std::ceil(sampling_factor * length));
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) params.push_back(static_cast<double>(i) / steps);
    return params;
}

double route_offset(double p, const RouteDescriptor& d, const GridDims& dims) {
    if (d.harmonics == 0) return 0.0;
    double amplitude = d.amplitude_fraction * std::min(dims.rows, dims.cols);
    return amplitude * std::sin(d.harmonics * 3.141592653589793 * p);
}

std::vector<Cell> discretize_guide(Cell c, Cell o, const RouteDescriptor& d,
                                   const GridDims& dims) {
    double dx = o.x - c.x;
    double dy = o.y - c.y;
    double length = std::hypot(dx, dy);
    // Unit normal of the segment; offsets displace samples along it.
    double nx = -dy / length;
    double ny = dx / length;

    std::vector<Cell> guide;
    std::set<Cell> seen;
    auto push = [&](Cell cell) {
        cell.x = std::clamp(cell.x, 0, dims.cols - 1);
        cell.y = std::clamp(cell.y, 0, dims.rows - 1);
        if (seen.insert(cell).second) guide.push_back(cell);
    };

    push(c);
    for (double p : segment_samples(c, o, d.sampling_factor)) {
        double off = route_offset(p, d, dims);
        double fx = c.x + p * dx + off * nx;
        double fy = c.y + p * dy + off * ny;
        push({static_cast<int>(std::floor(fx)), static_cast<int>(std::floor(fy))});
    }
    push(o); // guard against flooring jitter at p = 1
    return guide;
}

CostMatrix build_cost_matrix(std::span<const Cell> guide, const GridDims& dims, double penalty) {
    if (guide.empty()) throw ValidationError("cost matrix: empty guide");
    if (!(penalty > 1.0)) throw ValidationError("cost matrix: penalty must exceed 1");
    CostMatrix m{dims.rows, dims.cols, {}};
    m.cost.assign(static_cast<std::size_t>(dims.rows) * dims.cols, penalty);
    for (Cell g : guide) {
        if (!m.in_bounds(g)) throw ValidationError("cost matrix: guide cell out of bounds");
        m.at(g) = 1.0;
    }
    return m;
}

double blocking_cost(const CostMatrix& m, double penalty) {
    // Any simple path visits fewer than rows*cols cells of cost <= penalty,
    // so one blocked cell costs more than any unblocked route.
    return penalty * m.rows * m.cols * 10.0;
}

void block_cells(CostMatrix& m, std::span<const Cell> blocked, double penalty) {
    double cost = blocking_cost(m, penalty);
    for (Cell b : blocked)
        if (m.in_bounds(b)) m.at(b) = cost;
}

std::vector<Cell> shortest_path(const CostMatrix& m, Cell c, Cell o) {
    if (!m.in_bounds(c) || !m.in_bounds(o)) {
        throw ValidationError("shortest_path: endpoint out of bounds");
    }
    if (c == o) return {c};

    const std::size_t total = static_cast<std::size_t>(m.rows) * m.cols;
    std::vector<double> dist(total, std::numeric_limits<double>::infinity());
    std::vector<int> parent(total, -1);
    std::vector<char> done(total, 0);
    auto id = [&](Cell p) { return static_cast<std::size_t>(p.y) * m.cols + p.x; };

    using Entry = std::tuple<double, int, int>; // (distance, y, x)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    dist[id(c)] = 0.0; // entering the start is free
    frontier.emplace(0.0, c.y, c.x);

    while (!frontier.empty()) {
        auto [d, y, x] = frontier.top();
        frontier.pop();
        Cell p{x, y};
        if (done[id(p)]) continue;
        done[id(p)] = 1;
        if (p == o) break;
        for (DirVec v : kCardinals) {
            Cell q = p + v;
            if (!m.in_bounds(q) || done[id(q)]) continue;
            double nd = d + m.at(q);
            if (nd < dist[id(q)]) {
                dist[id(q)] = nd;
                parent[id(q)] = static_cast<int>(id(p));
                frontier.emplace(nd, q.y, q.x);
            }
        }
    }

    std::vector<Cell> path;
    for (int at = static_cast<int>(id(o)); at != -1; at = parent[at]) {
        path.push_back({at % m.cols, at / m.cols});
        if (path.back() == c) break;
    }
    std::reverse(path.begin(), path.end());
    if (path.front() != c || path.back() != o) {
        throw GenerationError("shortest_path: no route found"); // unreachable with finite costs
    }
    return path;
}

double path_cost(const CostMatrix& m, std::span<const Cell> path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += m.at(path[i]);
    return total;
}

void generate_level(OccupancyGrid& grid, int level, const LevelPlan& plan,
                    const RouteDescriptor& d, double penalty) {
    const GridDims& dims = grid.dims();

    std::vector<Cell> guards;
    for (const ConstraintBundle& b : plan.bundles)
        guards.insert(guards.end(), b.guards.begin(), b.guards.end());

    for (const ConstraintBundle& b : plan.bundles) union_path(grid, level, b.stamp);

    auto carve = [&](Cell from, Cell to) {
        if (from == to) return;
        std::vector<Cell> guide = discretize_guide(from, to, d, dims);
        CostMatrix m = build_cost_matrix(guide, dims, penalty);
        block_cells(m, guards, penalty);
        std::vector<Cell> path = shortest_path(m, from, to);
        union_path(grid, level, path);
    };

    if (plan.connector) carve(plan.connector->first, plan.connector->second);
    for (const ConstraintBundle& b : plan.bundles) {
        for (std::size_t i = 0; i < b.constraints.size(); ++i) {
            carve(b.constraints[i], b.objectives[i]);
        }
    }
}

} // namespace cavegen
