#pragma once

#include <array>
#include <string>
#include <vector>

#include "cavegen/exec.hpp"
#include "cavegen/grid.hpp"

namespace cavegen {

// One level of an occupancy grid as a standalone binary matrix.
struct LevelMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> v; // row-major

    static LevelMatrix from_level(const OccupancyGrid& grid, int level);

    std::uint8_t at(int y, int x) const { return v[static_cast<std::size_t>(y) * cols + x]; }
    std::uint8_t& at(int y, int x) { return v[static_cast<std::size_t>(y) * cols + x]; }

    bool operator==(const LevelMatrix&) const = default;
};

// Similarity score: sum of the elementwise product over the sum of all
// entries of both matrices. The denominator is the plain sum (not the set
// union), so identical non-empty matrices score 0.5, the maximum. Two empty
// matrices score 0.
double iou(const LevelMatrix& a, const LevelMatrix& b);

LevelMatrix mirror_h(const LevelMatrix& m); // flip columns (left-right)
LevelMatrix mirror_v(const LevelMatrix& m); // flip rows (top-bottom)

// Zero-pad to size x size, content anchored top-left.
LevelMatrix pad_to(const LevelMatrix& m, int rows, int cols);

// k quarter-turns clockwise; requires a square matrix (pad first otherwise).
LevelMatrix rotate90(const LevelMatrix& m, int k);

struct SymmetryScores {
    double horizontal = 0.0; // iou against the left-right mirror
    double vertical = 0.0;   // iou against the top-bottom mirror
    double rotational = 0.0; // mean iou against the 90/180/270 rotations
};

// Self-similarity under mirrors and rotations. Non-square matrices are
// zero-padded square for the rotational score. All scores are in [0, 0.5];
// divide by 0.5 for the normalized scale.
SymmetryScores symmetry_scores(const LevelMatrix& m);

// Level-wise mean of symmetry_scores over a whole grid.
SymmetryScores world_symmetry(const OccupancyGrid& grid);

// Normalized histogram of cell classifications over all levels, indexed by
// TopoType. Cells with no cardinal neighbor are skipped; a grid with no
// classifiable cell at all is an error.
std::array<double, 5> appearance_distribution(const OccupancyGrid& grid);

TopoType modal_type(const std::array<double, 5>& distribution);

// Similarity of two whole worlds: level-aligned iou (level k against level
// k) averaged over the shared level count, with levels zero-padded to a
// common frame when dimensions differ.
double world_similarity(const OccupancyGrid& a, const OccupancyGrid& b);

// Full symmetric pairwise matrix of world_similarity values, diagonal 0.5.
// Parallel mode splits the pair list across threads; every entry lands in
// its own slot so both modes produce identical matrices.
std::vector<std::vector<double>> pairwise_similarity(const std::vector<const OccupancyGrid*>& grids,
                                                     ExecMode mode = ExecMode::Parallel);

struct GroupReport {
    std::string label;
    std::vector<std::string> world_ids;
    std::vector<std::vector<double>> similarity;
    std::vector<SymmetryScores> symmetry; // one per world
    std::array<double, 5> mean_appearance{};
    double mean_pairwise = 0.0; // off-diagonal mean of the similarity matrix
};

GroupReport group_report(const std::string& label, const std::vector<std::string>& world_ids,
                         const std::vector<const OccupancyGrid*>& grids,
                         ExecMode mode = ExecMode::Parallel);

// CSV: header row of world ids, then one row per world with 6-decimal
// similarity values.
std::string similarity_csv(const GroupReport& report);

// Standalone heatmap of the similarity matrix, linear white-to-blue ramp over
// the [0, 0.5] score range.
std::string heatmap_svg(const GroupReport& report);

} // namespace cavegen
