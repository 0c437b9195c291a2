#include "cavegen/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "cavegen/textfmt.hpp"

namespace cavegen {

LevelMatrix LevelMatrix::from_level(const OccupancyGrid& grid, int level) {
    const GridDims& d = grid.dims();
    LevelMatrix m{d.rows, d.cols, {}};
    m.v.resize(static_cast<std::size_t>(d.rows) * d.cols);
    for (int y = 0; y < d.rows; ++y)
        for (int x = 0; x < d.cols; ++x) m.at(y, x) = grid.occupied(level, {x, y}) ? 1 : 0;
    return m;
}

double iou(const LevelMatrix& a, const LevelMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw ValidationError("iou: dimension mismatch");
    }
    long long product = 0;
    long long total = 0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        product += a.v[i] * b.v[i];
        total += a.v[i] + b.v[i];
    }
    if (total == 0) return 0.0;
    return static_cast<double>(product) / static_cast<double>(total);
}

LevelMatrix mirror_h(const LevelMatrix& m) {
    LevelMatrix r{m.rows, m.cols, std::vector<std::uint8_t>(m.v.size())};
    for (int y = 0; y < m.rows; ++y)
        for (int x = 0; x < m.cols; ++x) r.at(y, x) = m.at(y, m.cols - 1 - x);
    return r;
}

LevelMatrix mirror_v(const LevelMatrix& m) {
    LevelMatrix r{m.rows, m.cols, std::vector<std::uint8_t>(m.v.size())};
    for (int y = 0; y < m.rows; ++y)
        for (int x = 0; x < m.cols; ++x) r.at(y, x) = m.at(m.rows - 1 - y, x);
    return r;
}

LevelMatrix pad_to(const LevelMatrix& m, int rows, int cols) {
    if (rows < m.rows || cols < m.cols) throw ValidationError("pad_to: target smaller than source");
    LevelMatrix r{rows, cols, std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols, 0)};
    for (int y = 0; y < m.rows; ++y)
        for (int x = 0; x < m.cols; ++x) r.at(y, x) = m.at(y, x);
    return r;
}

LevelMatrix rotate90(const LevelMatrix& m, int k) {
    if (m.rows != m.cols) throw ValidationError("rotate90: matrix must be square");
    k &= 3;
    LevelMatrix r = m;
    for (int turn = 0; turn < k; ++turn) {
        LevelMatrix next{r.rows, r.cols, std::vector<std::uint8_t>(r.v.size())};
        // Clockwise: row y of the source becomes column (rows-1-y).
        for (int y = 0; y < r.rows; ++y)
            for (int x = 0; x < r.cols; ++x) next.at(x, r.rows - 1 - y) = r.at(y, x);
        r = std::move(next);
    }
    return r;
}

SymmetryScores symmetry_scores(const LevelMatrix& m) {
    SymmetryScores s;
    s.horizontal = iou(m, mirror_h(m));
    s.vertical = iou(m, mirror_v(m));

    int side = std::max(m.rows, m.cols);
    LevelMatrix sq = pad_to(m, side, side);
    double sum = 0.0;
    for (int k = 1; k <= 3; ++k) sum += iou(sq, rotate90(sq, k));
    s.rotational = sum / 3.0;
    return s;
}

SymmetryScores world_symmetry(const OccupancyGrid& grid) {
    SymmetryScores mean;
    int levels = grid.dims().levels;
    for (int k = 0; k < levels; ++k) {
        SymmetryScores s = symmetry_scores(LevelMatrix::from_level(grid, k));
        mean.horizontal += s.horizontal / levels;
        mean.vertical += s.vertical / levels;
        mean.rotational += s.rotational / levels;
    }
    return mean;
}

std::array<double, 5> appearance_distribution(const OccupancyGrid& grid) {
    std::array<double, 5> counts{};
    long long total = 0;
    const GridDims& d = grid.dims();
    for (int k = 0; k < d.levels; ++k) {
        for (int y = 0; y < d.rows; ++y) {
            for (int x = 0; x < d.cols; ++x) {
                Cell p{x, y};
                if (!grid.occupied(k, p)) continue;
                unsigned mask = neighbor_mask(grid, k, p);
                if (mask == 0) continue; // isolated cells have no tile class
                counts[static_cast<std::size_t>(classify_mask(mask).type)] += 1.0;
                ++total;
            }
        }
    }
    if (total == 0) throw GenerationError("appearance: no classifiable cells in the grid");
    for (double& c : counts) c /= static_cast<double>(total);
    return counts;
}

TopoType modal_type(const std::array<double, 5>& distribution) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < distribution.size(); ++i)
        if (distribution[i] > distribution[best]) best = i;
    return static_cast<TopoType>(best);
}

double world_similarity(const OccupancyGrid& a, const OccupancyGrid& b) {
    int rows = std::max(a.dims().rows, b.dims().rows);
    int cols = std::max(a.dims().cols, b.dims().cols);
    int levels = std::min(a.dims().levels, b.dims().levels);
    double sum = 0.0;
    for (int k = 0; k < levels; ++k) {
        LevelMatrix ma = pad_to(LevelMatrix::from_level(a, k), rows, cols);
        LevelMatrix mb = pad_to(LevelMatrix::from_level(b, k), rows, cols);
        sum += iou(ma, mb);
    }
    return levels == 0 ? 0.0 : sum / levels;
}

std::vector<std::vector<double>> pairwise_similarity(const std::vector<const OccupancyGrid*>& grids,
                                                     ExecMode mode) {
    const int count = static_cast<int>(grids.size());
    std::vector<std::vector<double>> matrix(static_cast<std::size_t>(count),
                                            std::vector<double>(static_cast<std::size_t>(count)));

    // Upper triangle as a flat list so parallel chunks are balanced.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < count; ++i)
        for (int j = i; j < count; ++j) pairs.emplace_back(i, j);

    const auto task = [&](std::size_t idx) {
        auto [i, j] = pairs[idx];
        double value = world_similarity(*grids[static_cast<std::size_t>(i)],
                                        *grids[static_cast<std::size_t>(j)]);
        matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = value;
        matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = value;
    };

    if (mode == ExecMode::Parallel) {
#ifdef CAVEGEN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long idx = 0; idx < static_cast<long long>(pairs.size()); ++idx) {
            task(static_cast<std::size_t>(idx));
        }
    } else {
        for (std::size_t idx = 0; idx < pairs.size(); ++idx) task(idx);
    }
    return matrix;
}

GroupReport group_report(const std::string& label, const std::vector<std::string>& world_ids,
                         const std::vector<const OccupancyGrid*>& grids, ExecMode mode) {
    if (world_ids.size() != grids.size()) {
        throw ValidationError("group_report: id/grid count mismatch");
    }
    GroupReport report;
    report.label = label;
    report.world_ids = world_ids;
    report.similarity = pairwise_similarity(grids, mode);

    report.symmetry.reserve(grids.size());
    for (const OccupancyGrid* g : grids) report.symmetry.push_back(world_symmetry(*g));

    std::array<double, 5> mean{};
    for (const OccupancyGrid* g : grids) {
        std::array<double, 5> a = appearance_distribution(*g);
        for (std::size_t i = 0; i < a.size(); ++i) mean[i] += a[i] / grids.size();
    }
    report.mean_appearance = mean;

    double sum = 0.0;
    long long off_diagonal = 0;
    for (std::size_t i = 0; i < grids.size(); ++i) {
        for (std::size_t j = 0; j < grids.size(); ++j) {
            if (i == j) continue;
            sum += report.similarity[i][j];
            ++off_diagonal;
        }
    }
    report.mean_pairwise = off_diagonal == 0 ? 0.0 : sum / static_cast<double>(off_diagonal);
    return report;
}

std::string similarity_csv(const GroupReport& report) {
    std::string out = "world";
    for (const std::string& id : report.world_ids) out += "," + id;
    out += "\n";
    for (std::size_t i = 0; i < report.world_ids.size(); ++i) {
        out += report.world_ids[i];
        for (double value : report.similarity[i]) out += "," + fmt_fixed(value, 6);
        out += "\n";
    }
    return out;
}

std::string heatmap_svg(const GroupReport& report) {
    const int cell = 14;
    const int margin = 4;
    const int count = static_cast<int>(report.world_ids.size());
    const int size = 2 * margin + count * cell + 18;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(size) + "\" height=\"" + std::to_string(size) + "\">\n";
    svg += "<text x=\"" + std::to_string(margin) + "\" y=\"14\" font-size=\"11\" "
           "font-family=\"monospace\">similarity " + report.label + "</text>\n";
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
            double t = std::clamp(report.similarity[static_cast<std::size_t>(i)]
                                                   [static_cast<std::size_t>(j)] /
                                      0.5,
                                  0.0, 1.0);
            // White at 0 to deep blue at the 0.5 maximum.
            int r = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            int g = static_cast<int>(std::lround(255.0 * (1.0 - 0.8 * t)));
            svg += "<rect x=\"" + std::to_string(margin + j * cell) + "\" y=\"" +
                   std::to_string(18 + margin + i * cell) + "\" width=\"" + std::to_string(cell) +
                   "\" height=\"" + std::to_string(cell) + "\" fill=\"rgb(" + std::to_string(r) +
                   "," + std::to_string(g) + ",255)\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace cavegen
