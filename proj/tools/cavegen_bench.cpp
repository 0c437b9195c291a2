// Timing harness for the kernels that carry both a serial reference and an
// OpenMP path: pairwise world similarity, mesh merging, and batch world
// generation. Each benchmark runs both modes on identical input, checks the
// outputs really are identical (the serial path is the reference the tests
// trust), and reports the speedup. Exits nonzero on any output mismatch.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#ifdef CAVEGEN_HAVE_OPENMP
#include <omp.h>
#endif

#include "cavegen/grid_io.hpp"
#include "cavegen/pipeline.hpp"

using namespace cavegen;
namespace fs = std::filesystem;

namespace {

double best_ms(int repeats, const std::function<void()>& fn) {
    double best = 0.0;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (r == 0 || ms < best) best = ms;
    }
    return best;
}

void report(const char* kernel, const char* work, double serial_ms, double parallel_ms,
            bool identical) {
    std::printf("%-22s %-28s %9.2f ms %9.2f ms %6.2fx  %s\n", kernel, work, serial_ms,
                parallel_ms, serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

std::vector<GeneratedWorld> make_worlds(int count, const TileCatalog& catalog) {
    std::vector<GeneratedWorld> worlds;
    worlds.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        EnvironmentSpec spec;
        spec.dims = {1, 30, 30};
        spec.route.harmonics = i % 3;
        spec.units = {{i % 2, 1, 1, 0}};
        spec.seed = derive_seed(7, static_cast<std::uint64_t>(i), "world");
        worlds.push_back(generate_world(spec, catalog));
    }
    return worlds;
}

// Relative path -> content for every occupancy/manifest document under root.
std::map<fs::path, std::string> collect_docs(const fs::path& root) {
    std::map<fs::path, std::string> docs;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        fs::path name = entry.path().filename();
        if (name == "occupancy.json" || name == "manifest.json")
            docs[fs::relative(entry.path(), root)] = read_text_file(entry.path());
    }
    return docs;
}

} // namespace

int main(int argc, char** argv) {
    int repeats = 3;
    int world_count = 40;
    int batch_count = 16;

    CLI::App app{"serial vs OpenMP timings for the mode-switched kernels"};
    app.add_option("--repeat", repeats, "Timed runs per mode, best wins (default 3)");
    app.add_option("--worlds", world_count, "Worlds in the similarity benchmark (default 40)");
    app.add_option("--batch", batch_count, "Worlds in the batch benchmark (default 16)");
    CLI11_PARSE(app, argc, argv);

#ifdef CAVEGEN_HAVE_OPENMP
    std::printf("OpenMP enabled, %d threads available\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel mode falls back to serial\n\n");
#endif
    std::printf("%-22s %-28s %12s %12s %7s\n", "kernel", "work", "serial", "parallel", "speedup");

    TileCatalog catalog = builtin_catalog();
    bool all_identical = true;

    { // pairwise similarity over a moderate world population
        std::vector<GeneratedWorld> worlds = make_worlds(world_count, catalog);
        std::vector<const OccupancyGrid*> grids;
        for (const GeneratedWorld& w : worlds) grids.push_back(&w.grid);

        std::vector<std::vector<double>> serial_out, parallel_out;
        double s = best_ms(repeats, [&] { serial_out = pairwise_similarity(grids, ExecMode::Serial); });
        double p =
            best_ms(repeats, [&] { parallel_out = pairwise_similarity(grids, ExecMode::Parallel); });
        bool same = serial_out == parallel_out;
        all_identical = all_identical && same;
        std::string work = std::to_string(world_count) + " worlds, 30x30";
        report("pairwise_similarity", work.c_str(), s, p, same);
    }

    { // mesh merge of one large multi-level world
        EnvironmentSpec spec;
        spec.dims = {3, 50, 50};
        spec.route.harmonics = 1;
        spec.units.assign(3, StructuralRequest{1, 2, 2, 0});
        spec.seed = 4242;
        GeneratedWorld world = generate_world(spec, catalog);

        Mesh serial_mesh, parallel_mesh;
        double s = best_ms(repeats,
                           [&] { serial_mesh = merge_meshes(world.manifest, catalog, ExecMode::Serial); });
        double p = best_ms(
            repeats, [&] { parallel_mesh = merge_meshes(world.manifest, catalog, ExecMode::Parallel); });
        bool same = serial_mesh == parallel_mesh;
        all_identical = all_identical && same;
        std::string work = std::to_string(world.manifest.placements.size()) + " placements, 50x50x3";
        report("merge_meshes", work.c_str(), s, p, same);
    }

    { // whole-pipeline batch, occupancy and manifest only
        fs::path base = fs::temp_directory_path() / ("cavegen_bench_" + std::to_string(::getpid()));
        EnvironmentSpec preset;
        preset.preset = "natural-cave";

        auto run_mode = [&](const fs::path& out, int parallelism) {
            fs::remove_all(out);
            BatchOptions opts;
            opts.count = batch_count;
            opts.master_seed = 42;
            opts.parallelism = parallelism;
            opts.emit.mesh = false;
            run_batch(preset, out, opts);
        };

        double s = best_ms(repeats, [&] { run_mode(base / "serial", 1); });
        double p = best_ms(repeats, [&] { run_mode(base / "parallel", 0); });
        bool same = collect_docs(base / "serial") == collect_docs(base / "parallel");
        all_identical = all_identical && same;
        fs::remove_all(base);
        std::string work = std::to_string(batch_count) + " preset worlds";
        report("run_batch", work.c_str(), s, p, same);
    }

    if (!all_identical) {
        std::fprintf(stderr, "\nserial and parallel outputs diverged; modes must match exactly\n");
        return 1;
    }
    return 0;
}
