// Command line front end: compose a spec from preset/config/flags, run the
// pipeline, and map failures onto stable exit codes (0 ok, 1 bad input,
// 2 generation failure, 3 partial batch).
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cavegen/grid_io.hpp"
#include "cavegen/pipeline.hpp"
#include "cavegen/preview.hpp"

using namespace cavegen;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitGeneration = 2;
constexpr int kExitPartialBatch = 3;

// Flag-level overrides, applied after preset resolution and config overlay
// (flags beat the file, the file beats the preset draw).
struct SpecFlags {
    std::string preset;
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double penalty = 0.0;
    bool penalty_set = false;
    double amplitude = 0.0;
    bool amplitude_set = false;
    double sampling = 0.0;
    bool sampling_set = false;
};

void apply_flags(EnvironmentSpec& spec, const SpecFlags& in) {
    if (in.penalty_set) spec.penalty = in.penalty;
    if (in.amplitude_set) spec.route.amplitude_fraction = in.amplitude;
    if (in.sampling_set) spec.route.sampling_factor = in.sampling;
}

// Base spec for generate/batch. The preset (flag, or config field) is drawn
// from a seed-derived stream, then the config document and flags overlay it.
EnvironmentSpec compose_spec(const SpecFlags& in, std::string* config_text_out,
                             std::uint64_t* seed_out) {
    std::string config_text;
    if (!in.config_path.empty()) config_text = read_text_file(in.config_path);

    std::string preset = in.preset;
    std::uint64_t seed = in.seed_set ? in.seed : 0;
    if (!config_text.empty()) {
        EnvironmentSpec peek = spec_from_json(config_text);
        if (preset.empty() && is_preset_name(peek.preset)) preset = peek.preset;
        if (!in.seed_set) seed = peek.seed;
    }

    EnvironmentSpec spec;
    if (!preset.empty()) {
        Rng preset_rng(derive_seed(seed, 0, "preset"));
        spec = resolve_preset(preset, preset_rng);
    }
    if (!config_text.empty()) spec = spec_from_json(config_text, std::move(spec));
    apply_flags(spec, in);
    spec.seed = seed;
    spec.validate();

    if (config_text_out) *config_text_out = std::move(config_text);
    if (seed_out) *seed_out = seed;
    return spec;
}

EmitOptions emit_options(const std::vector<std::string>& formats, bool no_mesh, bool split_tiles,
                         int parallelism) {
    EmitOptions emit;
    if (!formats.empty()) {
        auto has = [&](const char* f) {
            return std::find(formats.begin(), formats.end(), f) != formats.end();
        };
        emit.occupancy = has("occupancy");
        emit.manifest = has("manifest");
        // The sdf references the obj, so the two travel together.
        emit.mesh = has("obj") || has("sdf");
    }
    if (no_mesh) emit.mesh = false;
    emit.split_tiles = split_tiles;
    emit.mode = parallelism == 1 ? ExecMode::Serial : ExecMode::Parallel;
    return emit;
}

int cmd_generate(const SpecFlags& flags, const std::string& out_dir, const EmitOptions& emit) {
    EnvironmentSpec spec = compose_spec(flags, nullptr, nullptr);
    TileCatalog catalog = catalog_for(spec);
    GeneratedWorld world = generate_world(spec, catalog);
    auto files = write_world(out_dir, world, catalog, emit);

    std::fputs(world_summary(world).c_str(), stdout);
    for (const fs::path& f : files) std::printf("wrote %s\n", f.string().c_str());
    return kExitOk;
}

int cmd_batch(const SpecFlags& flags, const std::string& out_dir, const EmitOptions& emit,
              int count, int parallelism) {
    std::string config_text;
    std::uint64_t master_seed = 0;
    EnvironmentSpec base = compose_spec(flags, &config_text, &master_seed);

    BatchOptions opts;
    opts.count = count;
    opts.master_seed = master_seed;
    opts.parallelism = parallelism;
    opts.emit = emit;
    opts.overlay = [config_text, flags](EnvironmentSpec& spec) {
        if (!config_text.empty()) spec = spec_from_json(config_text, std::move(spec));
        apply_flags(spec, flags);
    };

    BatchReport report = run_batch(base, out_dir, opts);
    for (const BatchEntry& e : report.entries) {
        if (e.ok) {
            std::printf("[ok]   %s seed %llu: %d cells, %d junctions, %d intersections, %d loops\n",
                        e.dir.filename().string().c_str(),
                        static_cast<unsigned long long>(e.seed), e.occupied, e.counts.junctions,
                        e.counts.intersections, e.counts.loops);
        } else {
            std::printf("[fail] %s seed %llu: %s\n", e.dir.filename().string().c_str(),
                        static_cast<unsigned long long>(e.seed), e.error.c_str());
        }
    }
    int failed = report.failures();
    std::printf("%d/%d worlds generated, index at %s\n", count - failed, count,
                report.index_path.string().c_str());
    return failed > 0 ? kExitPartialBatch : kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& out_dir,
                int parallelism) {
    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    ExecMode mode = parallelism == 1 ? ExecMode::Serial : ExecMode::Parallel;
    AnalyzeReport report = run_analyze(paths, out_dir, mode);
    std::fputs(report.summary.c_str(), stdout);
    for (const fs::path& f : report.outputs) std::printf("wrote %s\n", f.string().c_str());
    return kExitOk;
}

int cmd_preview(const std::string& file, const std::string& out_dir, bool write_files) {
    OccupancyDoc doc = parse_occupancy(read_text_file(file));
    std::fputs(preview_text(doc.grid).c_str(), stdout);
    if (write_files) {
        fs::path svg = fs::path(out_dir) / "preview.svg";
        write_text_atomic(svg, preview_svg(doc.grid));
        std::printf("wrote %s\n", svg.string().c_str());
    }
    return kExitOk;
}

int cmd_catalog_validate(const std::string& file) {
    TileCatalog catalog;
    if (file.empty()) {
        catalog = builtin_catalog();
    } else {
        // Strict mode: the document must cover every group by itself.
        catalog = load_catalog(read_text_file(file), false);
        catalog.base_dir = fs::path(file).parent_path();
    }
    catalog.validate();
    std::fputs(catalog_summary(catalog).c_str(), stdout);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded generator of multi-level underground tunnel worlds"};
    app.require_subcommand(1);

    SpecFlags flags;
    std::string out_dir = ".";
    std::vector<std::string> formats;
    bool no_mesh = false;
    bool split_tiles = false;
    int parallelism = 0; // 0 = library picks
    int count = 1;
    std::vector<std::string> analyze_inputs;
    std::string preview_file;
    std::string catalog_file;

    auto add_spec_flags = [&](CLI::App* cmd) {
        cmd->add_option("--preset", flags.preset, "Environment family to draw parameters from")
            ->check(CLI::IsMember({"operational-mine", "natural-cave", "lava-tube"}));
        cmd->add_option("--seed", flags.seed, "Master seed (default 0)");
        cmd->add_option("--config", flags.config_path, "JSON spec document")
            ->check(CLI::ExistingFile);
        cmd->add_option("--penalty", flags.penalty, "Off-guide carving cost (> 1)");
        cmd->add_option("--amplitude-fraction", flags.amplitude,
                        "Route arch height as a fraction of the grid edge");
        cmd->add_option("--sampling-factor", flags.sampling, "Route guide samples per cell");
    };
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "Output directory")->envname("CAVEGEN_OUT_DIR");
        cmd->add_flag("--no-mesh", no_mesh, "Skip world.obj / world.sdf");
        cmd->add_flag("--split-tiles", split_tiles,
                      "Per-tile mesh library + one sdf model per placement");
        cmd->add_option("--format", formats,
                        "Artifacts to write (default: all). obj and sdf imply each other")
            ->check(CLI::IsMember({"occupancy", "manifest", "obj", "sdf"}));
        cmd->add_option("--parallelism", parallelism, "Worker threads (1 = serial, 0 = auto)");
    };

    CLI::App* gen = app.add_subcommand("generate", "Generate one world");
    add_spec_flags(gen);
    add_output_flags(gen);

    CLI::App* batch = app.add_subcommand("batch", "Generate a seeded dataset");
    batch->add_option("--count", count, "Worlds to generate")
        ->required()
        ->check(CLI::PositiveNumber);
    add_spec_flags(batch);
    add_output_flags(batch);

    CLI::App* analyze = app.add_subcommand("analyze", "Topology variability report");
    analyze->add_option("inputs", analyze_inputs, "Dataset directories or occupancy files")
        ->required();
    analyze->add_option("--out", out_dir, "Output directory")->envname("CAVEGEN_OUT_DIR");
    analyze->add_option("--parallelism", parallelism, "Worker threads (1 = serial, 0 = auto)");

    CLI::App* preview = app.add_subcommand("preview", "ASCII/SVG map of an occupancy file");
    preview->add_option("file", preview_file, "occupancy.json to render")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::Option* preview_out =
        preview->add_option("--out", out_dir, "Also write preview.svg here")
            ->envname("CAVEGEN_OUT_DIR");

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "Tile catalog utilities");
    catalog_cmd->require_subcommand(1);
    CLI::App* catalog_validate =
        catalog_cmd->add_subcommand("validate", "Check a catalog document (builtin if omitted)");
    catalog_validate->add_option("file", catalog_file, "Catalog JSON document")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    flags.seed_set = gen->count("--seed") > 0 || batch->count("--seed") > 0;
    flags.penalty_set = gen->count("--penalty") > 0 || batch->count("--penalty") > 0;
    flags.amplitude_set =
        gen->count("--amplitude-fraction") > 0 || batch->count("--amplitude-fraction") > 0;
    flags.sampling_set =
        gen->count("--sampling-factor") > 0 || batch->count("--sampling-factor") > 0;

    try {
        if (gen->parsed()) {
            return cmd_generate(flags, out_dir,
                                emit_options(formats, no_mesh, split_tiles, parallelism));
        }
        if (batch->parsed()) {
            return cmd_batch(flags, out_dir,
                             emit_options(formats, no_mesh, split_tiles, parallelism), count,
                             parallelism);
        }
        if (analyze->parsed()) return cmd_analyze(analyze_inputs, out_dir, parallelism);
        if (preview->parsed()) return cmd_preview(preview_file, out_dir, preview_out->count() > 0);
        if (catalog_cmd->parsed()) return cmd_catalog_validate(catalog_file);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const GenerationError& e) {
        std::fprintf(stderr, "generation failed: %s\n", e.what());
        return kExitGeneration;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected failure: %s\n", e.what());
        return kExitGeneration;
    }
    return kExitValidation;
}
