#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cavegen/exec.hpp"
#include "cavegen/grid.hpp"
#include "cavegen/rng.hpp"
#include "cavegen/tiles.hpp"

namespace cavegen {

struct TilePlacement {
    int level = 0;
    Cell cell;
    AssetKind kind = AssetKind::Pathway;
    int rotation = 0; // quarter turns mapping the asset's canonical ports onto the cell
    std::string asset_id;
    // World position of the tile's footprint corner before global scaling:
    // (cell.x * footprint, cell.y * footprint, level * level_height).
    Vec3 translation;

    bool operator==(const TilePlacement&) const = default;
};

struct ObstaclePlacement {
    Vec3 position; // pre-global-scale, like tile translations
    std::string asset_id;
    double scale = 1.0;

    bool operator==(const ObstaclePlacement&) const = default;
};

// The assembled world before any mesh work: placements, obstacles, shafts,
// and the global scale. Compact, simulator-agnostic, fully deterministic.
struct WorldManifest {
    GridDims dims;
    std::uint64_t seed = 0;
    std::string preset = "custom";
    double tile_footprint = 0.0;
    double tunnel_height = 0.0;
    double level_height = 0.0;
    Vec3 global_scale{1.0, 1.0, 1.0};
    std::vector<TilePlacement> placements; // canonical (level, y, x) order
    std::vector<ObstaclePlacement> obstacles;
    std::vector<ShaftLink> shafts;
};

// Walks each level's tunnel graph depth-first from its start cell (falling
// back to scan order for the first occupied cell, and re-seeding on any
// disconnected component), classifying cells and drawing a uniformly random
// asset of the matching group. Shaft cells additionally receive a Shaft
// placement. Placements come out canonicalized by (level, y, x).
WorldManifest associate(const OccupancyGrid& grid, const TileCatalog& catalog, Rng& rng,
                        const std::vector<Cell>& level_starts = {});

// Poisson(density) obstacles per pathway/corner tile, positioned in the
// interior of the tile footprint (a quarter-footprint margin from walls).
void place_obstacles(WorldManifest& manifest, const TileCatalog& catalog, double density,
                     Rng& rng);

// Global scale from user targets: width factor on x and z (tunnel sections
// scale uniformly), length factor on y, and never below 1 on y (worlds are
// stretched to reach min_length, not shrunk).
void scale_world(WorldManifest& manifest, double min_length_m, double max_width_m);

// One buffer with every tile (and obstacle) transformed into place; faces
// re-indexed, global scale applied last. Parallel mode transforms per
// placement into private slots, so both modes emit identical buffers.
Mesh merge_meshes(const WorldManifest& manifest, const TileCatalog& catalog,
                  ExecMode mode = ExecMode::Parallel);

std::string manifest_json(const WorldManifest& manifest);
WorldManifest parse_manifest(const std::string& text);

// SDF world (version 1.6 layout) with a single static model referencing the
// merged mesh by uri.
std::string emit_world_sdf(const WorldManifest& manifest, const std::string& mesh_uri);

// Split emission: one model per tile/obstacle placement. Rotations are baked
// into per-(asset, rotation) mesh variants so the global anisotropic scale
// can live in each model's <scale> without skewing rotated tiles.
struct SplitWorld {
    // Relative mesh path -> geometry (tile-local, rotation baked, unscaled).
    std::map<std::string, Mesh> meshes;
    std::string sdf;
};

SplitWorld emit_world_split(const WorldManifest& manifest, const TileCatalog& catalog);

// Resolves an asset's geometry: builtin meshes come straight from the
// catalog, external ones are parsed from disk (relative to catalog.base_dir)
// and fan-triangulated if needed.
Mesh asset_geometry(const TileCatalog& catalog, const TileAsset& asset);

} // namespace cavegen
