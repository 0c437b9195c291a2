#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cavegen/analysis.hpp"
#include "cavegen/assembly.hpp"
#include "cavegen/worldspec.hpp"

namespace cavegen {

struct LevelReport {
    StructuralRequest requested;
    UnitCounts counts;
    int rerolls = 0; // structural redraws needed before the level verified
};

struct GeneratedWorld {
    OccupancyGrid grid{GridDims{1, 2, 2}};
    WorldManifest manifest;
    std::vector<LevelReport> levels;
};

// Runs the whole chain for one spec: per-level unit placement and carving
// (with verification and bounded redraws), shaft linking between adjacent
// levels, tile association, obstacles, world scaling. All randomness comes
// from streams derived off spec.seed, so equal specs give equal worlds.
GeneratedWorld generate_world(const EnvironmentSpec& spec, const TileCatalog& catalog);

// Builds the catalog a spec asks for: external file when catalog_path is
// set, the builtin primitives otherwise. Spec texture bindings are applied
// to every tile that does not override the slot itself.
TileCatalog catalog_for(const EnvironmentSpec& spec);

std::string world_summary(const GeneratedWorld& world);

struct EmitOptions {
    bool occupancy = true;
    bool manifest = true;
    bool mesh = true;        // world.obj + world.sdf
    bool split_tiles = false; // per-tile OBJ library + one model per placement
    ExecMode mode = ExecMode::Parallel;
};

// Writes the selected artifacts into dir (created if needed):
// occupancy.json, manifest.json, world.obj, world.sdf and, in split mode,
// tiles/ and obstacles/ OBJ files. All writes are atomic. Returns the paths.
std::vector<std::filesystem::path> write_world(const std::filesystem::path& dir,
                                               const GeneratedWorld& world,
                                               const TileCatalog& catalog,
                                               const EmitOptions& options);

struct BatchOptions {
    int count = 1;
    std::uint64_t master_seed = 0;
    int parallelism = 1; // worlds generated concurrently; 1 = serial
    EmitOptions emit;
    // Config/flag overrides re-applied to each per-world spec (presets are
    // re-drawn per world, so overrides must be re-applied after the draw).
    std::function<void(EnvironmentSpec&)> overlay;
};

struct BatchEntry {
    int index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::filesystem::path dir;
    int occupied = 0;
    UnitCounts counts;
};

struct BatchReport {
    std::vector<BatchEntry> entries;
    std::filesystem::path index_path;

    int failures() const {
        int n = 0;
        for (const BatchEntry& e : entries) n += e.ok ? 0 : 1;
        return n;
    }
};

// Generates opts.count worlds under out_dir/<preset>/<index>/. Preset specs
// are re-drawn per world from derive_seed(master, index, "preset"); world
// seeds come from derive_seed(master, index, "world"). Failed worlds are
// recorded in the index document and skipped, not fatal.
BatchReport run_batch(const EnvironmentSpec& base, const std::filesystem::path& out_dir,
                      const BatchOptions& opts);

struct AnalyzeReport {
    std::vector<GroupReport> groups;
    std::vector<std::string> warnings; // unreadable inputs, skipped
    std::vector<std::filesystem::path> outputs;
    std::string summary;
};

// Loads every occupancy.json under root (grouped by the first directory
// level below it) or the explicit file list (one group), computes the
// group reports and writes <group>.csv, <group>.svg and summary.txt into
// out_dir.
AnalyzeReport run_analyze(const std::vector<std::filesystem::path>& inputs,
                          const std::filesystem::path& out_dir, ExecMode mode);

} // namespace cavegen
