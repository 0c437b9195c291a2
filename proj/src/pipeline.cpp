#include "cavegen/pipeline.hpp"

#include <algorithm>
#include <map>

#ifdef CAVEGEN_HAVE_OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "cavegen/grid_io.hpp"
#include "cavegen/textfmt.hpp"

namespace cavegen {

namespace fs = std::filesystem;

namespace {

// Structural redraws per level before giving up. Guard fencing makes a
// failed verification rare; the redraw path exists for unlucky layouts where
// carving merges two units into something else.
constexpr int kMaxRerolls = 8;

bool satisfies(const UnitCounts& counts, const StructuralRequest& req) {
    return counts.junctions >= req.junctions && counts.intersections >= req.intersections &&
           counts.loops >= req.loops;
}

std::string pad_index(int index, int width) {
    std::string s = std::to_string(index);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

UnitCounts total_counts(const GeneratedWorld& world) {
    UnitCounts total;
    for (const LevelReport& lr : world.levels) {
        total.deadends += lr.counts.deadends;
        total.pathways += lr.counts.pathways;
        total.corners += lr.counts.corners;
        total.junctions += lr.counts.junctions;
        total.intersections += lr.counts.intersections;
        total.loops += lr.counts.loops;
    }
    return total;
}

} // namespace

TileCatalog catalog_for(const EnvironmentSpec& spec) {
    TileCatalog catalog;
    if (spec.catalog_path.empty()) {
        catalog = builtin_catalog();
    } else {
        catalog = load_catalog(read_text_file(spec.catalog_path), true);
        catalog.base_dir = spec.catalog_path.parent_path();
    }
    // Spec-level texture bindings reach every tile; per-asset entries win.
    for (const auto& [slot, tex] : spec.textures) {
        for (TileAsset& asset : catalog.assets) asset.textures.emplace(slot, tex);
    }
    return catalog;
}

GeneratedWorld generate_world(const EnvironmentSpec& spec, const TileCatalog& catalog) {
    spec.validate();
    catalog.validate();

    GeneratedWorld world;
    world.grid = OccupancyGrid(spec.dims);
    std::optional<Cell> pending_shaft; // chosen on the previous level, carved into this one

    for (int level = 0; level < spec.dims.levels; ++level) {
        const StructuralRequest& request = spec.units[static_cast<std::size_t>(level)];
        LevelPlan plan;
        bool committed = false;

        for (int retry = 0; retry < kMaxRerolls && !committed; ++retry) {
            std::uint64_t stream =
                derive_seed(spec.seed, (static_cast<std::uint64_t>(level) << 8) | retry,
                            "structural");
            Rng rng(stream);
            OccupancyGrid scratch = world.grid;
            try {
                plan = distribute_level(spec.dims, request, rng, pending_shaft);
                generate_level(scratch, level, plan, spec.route, spec.penalty);
            } catch (const GenerationError&) {
                continue; // layout dead end; redraw from the next stream
            }
            UnitCounts counts = count_units(scratch, level);
            if (!satisfies(counts, request)) continue;

            world.grid = std::move(scratch);
            world.levels.push_back({request, counts, retry});
            committed = true;
        }
        if (!committed) {
            throw GenerationError("level " + std::to_string(level) + " failed verification after " +
                                  std::to_string(kMaxRerolls) + " structural redraws");
        }

        if (pending_shaft) {
            // Occupied above (it was an objective) and now carved here too.
            world.grid.add_shaft({level - 1, *pending_shaft});
        }
        if (level + 1 < spec.dims.levels) {
            std::vector<Cell> candidates;
            for (const ConstraintBundle& b : plan.bundles) {
                candidates.insert(candidates.end(), b.objectives.begin(), b.objectives.end());
            }
            Rng shaft_rng(derive_seed(spec.seed, static_cast<std::uint64_t>(level), "shaft"));
            pending_shaft = candidates[shaft_rng.pick_index(candidates.size())];
        }
    }

    Rng tile_rng(derive_seed(spec.seed, 0, "associate"));
    world.manifest = associate(world.grid, catalog, tile_rng);
    world.manifest.seed = spec.seed;
    world.manifest.preset = spec.preset;

    Rng obstacle_rng(derive_seed(spec.seed, 0, "obstacles"));
    place_obstacles(world.manifest, catalog, spec.obstacle_density, obstacle_rng);

    scale_world(world.manifest, spec.min_length_m, spec.max_width_m);
    return world;
}

std::string world_summary(const GeneratedWorld& w) {
    const WorldManifest& m = w.manifest;
    std::string out;
    out += "preset " + m.preset + ", seed " + std::to_string(m.seed) + "\n";
    out += "grid " + std::to_string(m.dims.levels) + " level(s) of " + std::to_string(m.dims.rows) +
           "x" + std::to_string(m.dims.cols) + ", " + std::to_string(w.grid.occupied_count()) +
           " occupied cells\n";
    for (std::size_t k = 0; k < w.levels.size(); ++k) {
        const LevelReport& lr = w.levels[k];
        out += "level " + std::to_string(k) + ": deadends " + std::to_string(lr.counts.deadends) +
               ", pathways " + std::to_string(lr.counts.pathways) + ", corners " +
               std::to_string(lr.counts.corners) + ", junctions " +
               std::to_string(lr.counts.junctions) + " (requested " +
               std::to_string(lr.requested.junctions) + "), intersections " +
               std::to_string(lr.counts.intersections) + " (requested " +
               std::to_string(lr.requested.intersections) + "), loops " +
               std::to_string(lr.counts.loops) + " (requested " +
               std::to_string(lr.requested.loops) + ")";
        if (lr.rerolls > 0) out += ", redraws " + std::to_string(lr.rerolls);
        out += "\n";
    }
    out += "placements " + std::to_string(m.placements.size()) + " (" +
           std::to_string(m.shafts.size()) + " shafts), obstacles " +
           std::to_string(m.obstacles.size()) + "\n";
    out += "global scale " + fmt_fixed(m.global_scale.x, 2) + " x " +
           fmt_fixed(m.global_scale.y, 2) + " x " + fmt_fixed(m.global_scale.z, 2) + "\n";
    return out;
}

std::vector<fs::path> write_world(const fs::path& dir, const GeneratedWorld& world,
                                  const TileCatalog& catalog, const EmitOptions& options) {
    std::vector<fs::path> written;
    auto emit = [&](const fs::path& rel, const std::string& content) {
        fs::path p = dir / rel;
        write_text_atomic(p, content);
        written.push_back(p);
    };

    if (options.occupancy) {
        emit("occupancy.json", serialize_occupancy(world.grid, world.manifest.seed));
    }
    if (options.manifest) emit("manifest.json", manifest_json(world.manifest));
    if (options.mesh) {
        if (options.split_tiles) {
            SplitWorld split = emit_world_split(world.manifest, catalog);
            for (const auto& [name, mesh] : split.meshes) emit(name, write_obj(mesh));
            emit("world.sdf", split.sdf);
        } else {
            Mesh merged = merge_meshes(world.manifest, catalog, options.mode);
            emit("world.obj", write_obj(merged));
            emit("world.sdf", emit_world_sdf(world.manifest, "world.obj"));
        }
    }
    return written;
}

BatchReport run_batch(const EnvironmentSpec& base, const fs::path& out_dir,
                      const BatchOptions& opts) {
    if (opts.count < 1) throw ValidationError("batch: count must be >= 1");
    base.validate();

    const bool redraw = is_preset_name(base.preset);
    const fs::path batch_dir = out_dir / base.preset;
    const int width = std::max<int>(3, static_cast<int>(std::to_string(opts.count - 1).size()));

    // Catalog resolution may read files; do it once up front. Texture
    // bindings are per-spec, but presets never set them, so the base
    // catalog works for every world (overlay may adjust the spec's counts
    // and route, which do not touch the catalog).
    const TileCatalog catalog = catalog_for(base);

    std::vector<BatchEntry> entries(static_cast<std::size_t>(opts.count));

    auto one_world = [&](int i) {
        BatchEntry& entry = entries[static_cast<std::size_t>(i)];
        entry.index = i;
        entry.seed = derive_seed(opts.master_seed, static_cast<std::uint64_t>(i), "world");
        entry.dir = batch_dir / pad_index(i, width);
        try {
            EnvironmentSpec spec = base;
            if (redraw) {
                Rng preset_rng(
                    derive_seed(opts.master_seed, static_cast<std::uint64_t>(i), "preset"));
                spec = resolve_preset(base.preset, preset_rng);
            }
            if (opts.overlay) opts.overlay(spec);
            spec.seed = entry.seed;
            spec.validate();

            GeneratedWorld world = generate_world(spec, catalog);
            write_world(entry.dir, world, catalog, opts.emit);

            entry.occupied = static_cast<int>(world.grid.occupied_count());
            entry.counts = total_counts(world);
            entry.ok = true;
        } catch (const std::exception& e) {
            entry.ok = false;
            entry.error = e.what();
        }
    };

#ifdef CAVEGEN_HAVE_OPENMP
    if (opts.parallelism != 1) {
        int threads = opts.parallelism > 0 ? opts.parallelism : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (int i = 0; i < opts.count; ++i) one_world(i);
    } else {
        for (int i = 0; i < opts.count; ++i) one_world(i);
    }
#else
    for (int i = 0; i < opts.count; ++i) one_world(i);
#endif

    nlohmann::ordered_json index;
    index["format_version"] = 1;
    index["preset"] = base.preset;
    index["count"] = opts.count;
    index["master_seed"] = opts.master_seed;
    nlohmann::ordered_json worlds = nlohmann::ordered_json::array();
    for (const BatchEntry& e : entries) {
        nlohmann::ordered_json w;
        w["index"] = e.index;
        w["seed"] = e.seed;
        w["dir"] = pad_index(e.index, width);
        w["ok"] = e.ok;
        if (e.ok) {
            w["occupied"] = e.occupied;
            w["units"] = {{"deadends", e.counts.deadends},
                          {"pathways", e.counts.pathways},
                          {"corners", e.counts.corners},
                          {"junctions", e.counts.junctions},
                          {"intersections", e.counts.intersections},
                          {"loops", e.counts.loops}};
        } else {
            w["error"] = e.error;
        }
        worlds.push_back(std::move(w));
    }
    index["worlds"] = std::move(worlds);

    BatchReport report;
    report.entries = std::move(entries);
    report.index_path = batch_dir / "index.json";
    write_text_atomic(report.index_path, index.dump(1) + "\n");
    return report;
}

AnalyzeReport run_analyze(const std::vector<fs::path>& inputs, const fs::path& out_dir,
                          ExecMode mode) {
    if (inputs.empty()) throw ValidationError("analyze: no inputs given");

    // group label -> list of (world id, occupancy path)
    std::map<std::string, std::vector<std::pair<std::string, fs::path>>> found;

    auto add_file = [&](const fs::path& file, const fs::path& root) {
        fs::path rel = root.empty() ? file.filename() : fs::relative(file, root);
        std::vector<std::string> parts;
        for (const auto& part : rel) parts.push_back(part.string());
        // parts ends with the filename; a group needs a directory level
        // between the root and the world directory.
        std::string group = parts.size() >= 3 ? parts.front() : "all";
        std::string id = parts.size() >= 2 ? parts[parts.size() - 2] : file.stem().string();
        found[group].push_back({id, file});
    };

    for (const fs::path& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<fs::path> hits;
            for (const auto& e : fs::recursive_directory_iterator(input)) {
                if (e.is_regular_file() && e.path().filename() == "occupancy.json") {
                    hits.push_back(e.path());
                }
            }
            std::sort(hits.begin(), hits.end()); // directory iteration order is unspecified
            for (const fs::path& hit : hits) add_file(hit, input);
        } else {
            add_file(input, {});
        }
    }

    AnalyzeReport report;
    std::map<std::string, std::vector<OccupancyGrid>> grids_by_group;
    std::map<std::string, std::vector<std::string>> ids_by_group;
    std::size_t loaded = 0;
    for (auto& [group, files] : found) {
        for (auto& [id, path] : files) {
            try {
                OccupancyDoc doc = parse_occupancy(read_text_file(path));
                grids_by_group[group].push_back(std::move(doc.grid));
                ids_by_group[group].push_back(id);
                ++loaded;
            } catch (const std::exception& e) {
                report.warnings.push_back(path.string() + ": " + e.what());
            }
        }
    }
    if (loaded < 2) throw ValidationError("analyze: need at least 2 readable worlds");

    std::string summary;
    for (auto& [group, grids] : grids_by_group) {
        std::vector<const OccupancyGrid*> ptrs;
        ptrs.reserve(grids.size());
        for (const OccupancyGrid& g : grids) ptrs.push_back(&g);

        GroupReport gr = group_report(group, ids_by_group[group], ptrs, mode);

        fs::path csv = out_dir / (group + "_similarity.csv");
        fs::path svg = out_dir / (group + "_heatmap.svg");
        write_text_atomic(csv, similarity_csv(gr));
        write_text_atomic(svg, heatmap_svg(gr));
        report.outputs.push_back(csv);
        report.outputs.push_back(svg);

        double sym_h = 0, sym_v = 0, sym_r = 0;
        for (const SymmetryScores& s : gr.symmetry) {
            sym_h += s.horizontal / 0.5;
            sym_v += s.vertical / 0.5;
            sym_r += s.rotational / 0.5;
        }
        double n = static_cast<double>(gr.symmetry.size());

        summary += "group " + group + ": " + std::to_string(gr.world_ids.size()) + " worlds\n";
        summary += "  mean pairwise similarity " + fmt_fixed(gr.mean_pairwise, 4) + "\n";
        summary += "  mean normalized symmetry: horizontal " + fmt_fixed(sym_h / n, 4) +
                   ", vertical " + fmt_fixed(sym_v / n, 4) + ", rotational " +
                   fmt_fixed(sym_r / n, 4) + "\n";
        summary += "  appearance:";
        for (TopoType t : kTopoTypes) {
            summary += std::string(" ") + topo_name(t) + " " +
                       fmt_fixed(gr.mean_appearance[static_cast<std::size_t>(t)], 4);
        }
        summary += "\n  modal type: ";
        summary += topo_name(modal_type(gr.mean_appearance));
        summary += "\n";
        report.groups.push_back(std::move(gr));
    }
    for (const std::string& w : report.warnings) summary += "warning: " + w + "\n";

    fs::path summary_path = out_dir / "summary.txt";
    write_text_atomic(summary_path, summary);
    report.outputs.push_back(summary_path);
    report.summary = std::move(summary);
    return report;
}

} // namespace cavegen
