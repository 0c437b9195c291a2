#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavegen/grid.hpp"
#include "cavegen/mesh.hpp"

namespace cavegen {

// Tile groups: the five cell classes plus the vertical shaft connector.
enum class AssetKind : std::uint8_t {
    Deadend,
    Pathway,
    Corner,
    Junction,
    Intersection,
    Shaft,
};

AssetKind asset_kind_for(TopoType t);
const char* asset_kind_name(AssetKind k);
std::optional<AssetKind> asset_kind_from_name(std::string_view name);

struct TileAsset {
    std::string id;
    AssetKind kind = AssetKind::Pathway;
    Mesh mesh;             // tile-local geometry, plan footprint [0,T] x [0,T]
    std::string mesh_path; // external OBJ, loaded at merge time; empty = builtin
    double footprint = 0.0;
    double height = 0.0;
    unsigned ports = 0; // canonical-orientation port mask (grid mask bits)
    std::map<std::string, std::string> textures; // slot -> texture reference
};

struct ObstacleAsset {
    std::string id;
    Mesh mesh;
    std::string mesh_path;
    double size = 1.0;
};

struct TileCatalog {
    double footprint = 0.0;     // shared plan edge T of every tile
    double tunnel_height = 0.0; // port opening height
    double level_height = 0.0;  // vertical offset between levels; shaft span
    std::filesystem::path base_dir; // external mesh paths resolve against this
    std::vector<TileAsset> assets;
    std::vector<ObstacleAsset> obstacles;

    std::vector<const TileAsset*> group(AssetKind kind) const;

    // Every tile group non-empty, all footprints square and equal, shaft
    // height matching the level offset.
    void validate() const;
};

inline constexpr double kDefaultTunnelWidth = 10.0;
inline constexpr double kDefaultTunnelHeight = 7.5;
inline constexpr double kDefaultLevelHeight = 15.0;

// Parametric box-section tunnel tiles. Footprint edge is 2x the tunnel
// width; every open wall carries an identical tunnel_width x tunnel_height
// port mouth, so any two tiles mate. Watertight except those mouths.
std::vector<TileAsset> builtin_tiles(double tunnel_width, double tunnel_height,
                                     double level_height);

ObstacleAsset builtin_rock();

TileCatalog builtin_catalog();

// JSON catalog document. Missing tile groups are filled from the builtin set
// when allow_builtin_fallback is set; otherwise they fail validation.
TileCatalog load_catalog(const std::string& json_text, bool allow_builtin_fallback);

std::string catalog_summary(const TileCatalog& catalog);

} // namespace cavegen
