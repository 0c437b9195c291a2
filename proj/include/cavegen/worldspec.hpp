#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cavegen/pathgen.hpp"
#include "cavegen/rng.hpp"
#include "cavegen/structural.hpp"

namespace cavegen {

// Everything needed to generate one world. Presets fill this from their
// parameter ranges; config files and CLI flags overlay individual fields.
struct EnvironmentSpec {
    std::string preset = "custom";
    GridDims dims{1, 12, 12};
    RouteDescriptor route;
    std::vector<StructuralRequest> units{{}}; // one request per level
    double min_length_m = 1000.0;
    double max_width_m = 50.0;
    double obstacle_density = 0.0;
    std::map<std::string, std::string> textures; // slot -> texture reference
    std::filesystem::path catalog_path;          // empty = builtin tiles
    std::uint64_t seed = 0;
    double penalty = kDefaultPenalty;

    void validate() const;
};

inline constexpr std::string_view kPresetNames[3] = {"operational-mine", "natural-cave",
                                                     "lava-tube"};

bool is_preset_name(std::string_view name);

// Square footprint sized so constraint placement has headroom: edge =
// max(12, 6 * the largest per-level unit total).
int default_grid_edge(const std::vector<StructuralRequest>& units);

// Draws one concrete spec from the named preset's parameter ranges. Draw
// order is fixed (length, width, then loops/junctions/intersections per
// level), so a given rng state always yields the same spec. Grid dims come
// from the range maxima, which keeps every world of a preset on the same
// footprint for later comparison.
EnvironmentSpec resolve_preset(std::string_view name, Rng& rng);

// Overlays a JSON config document onto base. Recognized keys: preset, seed,
// dims {levels, rows, cols}, route {harmonics, amplitude_fraction,
// sampling_factor}, units (object or per-level array of {loops, junctions,
// intersections, random_fill}), min_length_m, max_width_m, obstacle_density,
// penalty, textures, catalog. Unknown keys are rejected. A single units
// object applies to every level. When units are given without dims, the grid
// is sized with default_grid_edge.
EnvironmentSpec spec_from_json(const std::string& text, EnvironmentSpec base = {});

} // namespace cavegen
