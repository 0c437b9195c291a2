#include "cavegen/assembly.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "cavegen/grid_io.hpp"
#include "cavegen/textfmt.hpp"

namespace cavegen {

namespace {

using ordered_json = nlohmann::ordered_json;

const TileAsset* find_asset(const TileCatalog& catalog, const std::string& id) {
    for (const TileAsset& a : catalog.assets)
        if (a.id == id) return &a;
    throw ValidationError("manifest references unknown asset '" + id + "'");
}

const ObstacleAsset* find_obstacle(const TileCatalog& catalog, const std::string& id) {
    for (const ObstacleAsset& o : catalog.obstacles)
        if (o.id == id) return &o;
    throw ValidationError("manifest references unknown obstacle '" + id + "'");
}

Mesh obstacle_geometry(const TileCatalog& catalog, const ObstacleAsset& asset) {
    if (!asset.mesh.vertices.empty()) return asset.mesh;
    return parse_obj(read_text_file(catalog.base_dir / asset.mesh_path)).mesh;
}

Mesh scaled_copy(Mesh m, double s) {
    for (Vec3& v : m.vertices) v = {v.x * s, v.y * s, v.z * s};
    return m;
}

std::string pose_line(Vec3 position, const Vec3& scale) {
    return fmt_fixed(position.x * scale.x, 6) + " " + fmt_fixed(position.y * scale.y, 6) + " " +
           fmt_fixed(position.z * scale.z, 6) + " 0 0 0";
}

std::string scale_tag(Vec3 s) {
    return "<scale>" + fmt_fixed(s.x, 6) + " " + fmt_fixed(s.y, 6) + " " + fmt_fixed(s.z, 6) +
           "</scale>";
}

std::string material_xml(const TileAsset* asset) {
    if (asset != nullptr && !asset->textures.empty()) {
        // One material per visual; the first bound slot wins.
        const auto& [slot, tex] = *asset->textures.begin();
        return "<material><script><uri>" + tex + "</uri><name>" + slot +
               "</name></script></material>";
    }
    return "<material><ambient>0.30 0.27 0.24 1</ambient>"
           "<diffuse>0.45 0.40 0.35 1</diffuse></material>";
}

std::string mesh_model_xml(const std::string& name, const std::string& pose,
                           const std::string& uri, const std::string& scale,
                           const std::string& material) {
    std::string geometry = "<geometry><mesh><uri>" + uri + "</uri>" + scale + "</mesh></geometry>";
    std::string xml;
    xml += "    <model name=\"" + name + "\">\n";
    xml += "      <static>true</static>\n";
    xml += "      <pose>" + pose + "</pose>\n";
    xml += "      <link name=\"link\">\n";
    xml += "        <collision name=\"collision\">" + geometry + "</collision>\n";
    xml += "        <visual name=\"visual\">" + geometry + material + "</visual>\n";
    xml += "      </link>\n";
    xml += "    </model>\n";
    return xml;
}

std::string world_wrap(const std::string& models) {
    std::string xml = "<?xml version=\"1.0\"?>\n<sdf version=\"1.6\">\n  <world name=\"cavegen\">\n";
    xml += models;
    xml += "  </world>\n</sdf>\n";
    return xml;
}

} // namespace

WorldManifest associate(const OccupancyGrid& grid, const TileCatalog& catalog, Rng& rng,
                        const std::vector<Cell>& level_starts) {
    catalog.validate();
    const GridDims& dims = grid.dims();

    WorldManifest manifest;
    manifest.dims = dims;
    manifest.tile_footprint = catalog.footprint;
    manifest.tunnel_height = catalog.tunnel_height;
    manifest.level_height = catalog.level_height;
    manifest.shafts = grid.shafts();

    auto translation_of = [&](int level, Cell cell) {
        return Vec3{cell.x * catalog.footprint, cell.y * catalog.footprint,
                    level * catalog.level_height};
    };

    for (int level = 0; level < dims.levels; ++level) {
        std::set<Cell> placed;

        auto visit_from = [&](Cell start) {
            std::vector<Cell> stack{start};
            while (!stack.empty()) {
                Cell p = stack.back();
                stack.pop_back();
                if (placed.count(p)) continue;
                placed.insert(p);

                Classification cls;
                try {
                    cls = classify_cell(grid, level, p);
                } catch (const GenerationError&) {
                    throw GenerationError("associate: isolated cell at level " +
                                          std::to_string(level) + " (" + std::to_string(p.x) +
                                          "," + std::to_string(p.y) + ")");
                }
                auto group = catalog.group(asset_kind_for(cls.type));
                const TileAsset* asset = group[rng.pick_index(group.size())];

                TilePlacement tp;
                tp.level = level;
                tp.cell = p;
                tp.kind = asset_kind_for(cls.type);
                tp.rotation = cls.rotation;
                tp.asset_id = asset->id;
                tp.translation = translation_of(level, p);
                manifest.placements.push_back(std::move(tp));

                // Reverse push so neighbors expand in up/down/left/right order.
                for (int i = 3; i >= 0; --i) {
                    Cell q = p + kCardinals[i];
                    if (grid.occupied_or_empty(level, q) && !placed.count(q)) stack.push_back(q);
                }
            }
        };

        if (level < static_cast<int>(level_starts.size()) &&
            grid.occupied_or_empty(level, level_starts[level])) {
            visit_from(level_starts[level]);
        }
        // Scan sweep: first traversal when no start was given, plus re-seeding
        // of any disconnected components the main walk missed.
        for (int y = 0; y < dims.rows; ++y)
            for (int x = 0; x < dims.cols; ++x)
                if (grid.occupied(level, {x, y}) && !placed.count({x, y})) visit_from({x, y});
    }

    auto shaft_group = catalog.group(AssetKind::Shaft);
    for (const ShaftLink& s : grid.shafts()) {
        const TileAsset* asset = shaft_group[rng.pick_index(shaft_group.size())];
        TilePlacement tp;
        tp.level = s.level;
        tp.cell = s.cell;
        tp.kind = AssetKind::Shaft;
        tp.rotation = 0;
        tp.asset_id = asset->id;
        tp.translation = translation_of(s.level, s.cell);
        manifest.placements.push_back(std::move(tp));
    }

    std::sort(manifest.placements.begin(), manifest.placements.end(),
              [](const TilePlacement& a, const TilePlacement& b) {
                  if (a.level != b.level) return a.level < b.level;
                  if (a.cell.y != b.cell.y) return a.cell.y < b.cell.y;
                  if (a.cell.x != b.cell.x) return a.cell.x < b.cell.x;
                  return (a.kind != AssetKind::Shaft) > (b.kind != AssetKind::Shaft);
              });
    return manifest;
}

void place_obstacles(WorldManifest& manifest, const TileCatalog& catalog, double density,
                     Rng& rng) {
    if (density < 0.0) throw ValidationError("obstacle density must be >= 0");
    if (density == 0.0 || catalog.obstacles.empty()) return;

    const double t = manifest.tile_footprint;
    for (const TilePlacement& tp : manifest.placements) {
        if (tp.kind != AssetKind::Pathway && tp.kind != AssetKind::Corner) continue;
        int count = rng.poisson(density);
        for (int i = 0; i < count; ++i) {
            double ox = rng.uniform_real(0.25 * t, 0.75 * t);
            double oy = rng.uniform_real(0.25 * t, 0.75 * t);
            double scale = rng.uniform_real(0.5, 1.5);
            const ObstacleAsset& asset = catalog.obstacles[rng.pick_index(catalog.obstacles.size())];
            manifest.obstacles.push_back(
                {tp.translation + Vec3{ox, oy, 0.0}, asset.id, scale});
        }
    }
}

void scale_world(WorldManifest& manifest, double min_length_m, double max_width_m) {
    if (manifest.placements.empty()) throw ValidationError("scale_world: empty manifest");
    if (!(min_length_m > 0.0) || !(max_width_m > 0.0)) {
        throw ValidationError("scale_world: targets must be positive");
    }
    double tunnel_width = manifest.tile_footprint / 2.0;

    int min_y = manifest.placements.front().cell.y;
    int max_y = min_y;
    for (const TilePlacement& tp : manifest.placements) {
        min_y = std::min(min_y, tp.cell.y);
        max_y = std::max(max_y, tp.cell.y);
    }
    double length = (max_y - min_y + 1) * manifest.tile_footprint;

    double width_factor = max_width_m / tunnel_width;
    double length_factor = std::max(1.0, min_length_m / length);
    manifest.global_scale = {width_factor, length_factor, width_factor};
}

Mesh asset_geometry(const TileCatalog& catalog, const TileAsset& asset) {
    if (!asset.mesh.vertices.empty()) return asset.mesh;
    return parse_obj(read_text_file(catalog.base_dir / asset.mesh_path)).mesh;
}

Mesh merge_meshes(const WorldManifest& manifest, const TileCatalog& catalog, ExecMode mode) {
    // Geometry is resolved up front (single-threaded: may touch disk).
    std::map<std::string, Mesh> tile_geometry;
    for (const TilePlacement& tp : manifest.placements) {
        if (!tile_geometry.count(tp.asset_id)) {
            tile_geometry[tp.asset_id] = asset_geometry(catalog, *find_asset(catalog, tp.asset_id));
        }
    }
    std::map<std::string, Mesh> rock_geometry;
    for (const ObstaclePlacement& op : manifest.obstacles) {
        if (!rock_geometry.count(op.asset_id)) {
            rock_geometry[op.asset_id] = obstacle_geometry(catalog, *find_obstacle(catalog, op.asset_id));
        }
    }

    const double pivot = manifest.tile_footprint / 2.0;
    const long long tiles = static_cast<long long>(manifest.placements.size());
    const long long rocks = static_cast<long long>(manifest.obstacles.size());
    std::vector<Mesh> slots(static_cast<std::size_t>(tiles + rocks));

    const auto transform_slot = [&](long long i) {
        if (i < tiles) {
            const TilePlacement& tp = manifest.placements[static_cast<std::size_t>(i)];
            MeshTransform t;
            t.plan_rotation = tp.rotation;
            t.pivot_x = pivot;
            t.pivot_y = pivot;
            t.translate = tp.translation;
            t.scale = manifest.global_scale;
            slots[static_cast<std::size_t>(i)] = transform_mesh(tile_geometry[tp.asset_id], t);
        } else {
            const ObstaclePlacement& op = manifest.obstacles[static_cast<std::size_t>(i - tiles)];
            MeshTransform t;
            t.translate = op.position;
            t.scale = manifest.global_scale;
            slots[static_cast<std::size_t>(i)] =
                transform_mesh(scaled_copy(rock_geometry[op.asset_id], op.scale), t);
        }
    };

    if (mode == ExecMode::Parallel) {
#ifdef CAVEGEN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < tiles + rocks; ++i) transform_slot(i);
    } else {
        for (long long i = 0; i < tiles + rocks; ++i) transform_slot(i);
    }

    Mesh merged;
    for (const Mesh& part : slots) append_mesh(merged, part);
    return merged;
}

std::string manifest_json(const WorldManifest& m) {
    ordered_json doc;
    doc["format_version"] = 1;
    doc["dims"] = {{"l", m.dims.levels}, {"m", m.dims.rows}, {"n", m.dims.cols}};
    doc["seed"] = m.seed;
    doc["preset"] = m.preset;
    doc["tile"] = {{"footprint", m.tile_footprint},
                   {"tunnel_height", m.tunnel_height},
                   {"level_height", m.level_height}};
    doc["global_scale"] = {m.global_scale.x, m.global_scale.y, m.global_scale.z};

    ordered_json placements = ordered_json::array();
    for (const TilePlacement& tp : m.placements) {
        placements.push_back({{"level", tp.level},
                              {"x", tp.cell.x},
                              {"y", tp.cell.y},
                              {"type", asset_kind_name(tp.kind)},
                              {"rotation", tp.rotation},
                              {"asset", tp.asset_id},
                              {"translation", {tp.translation.x, tp.translation.y, tp.translation.z}}});
    }
    doc["placements"] = std::move(placements);

    ordered_json obstacles = ordered_json::array();
    for (const ObstaclePlacement& op : m.obstacles) {
        obstacles.push_back({{"position", {op.position.x, op.position.y, op.position.z}},
                             {"asset", op.asset_id},
                             {"scale", op.scale}});
    }
    doc["obstacles"] = std::move(obstacles);

    ordered_json shafts = ordered_json::array();
    for (const ShaftLink& s : m.shafts) {
        shafts.push_back({{"level", s.level}, {"x", s.cell.x}, {"y", s.cell.y}});
    }
    doc["shafts"] = std::move(shafts);

    return doc.dump(1) + "\n";
}

WorldManifest parse_manifest(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("manifest parse: ") + e.what());
    }
    try {
        WorldManifest m;
        const auto& jd = doc.at("dims");
        m.dims = {jd.at("l").get<int>(), jd.at("m").get<int>(), jd.at("n").get<int>()};
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.preset = doc.at("preset").get<std::string>();
        m.tile_footprint = doc.at("tile").at("footprint").get<double>();
        m.tunnel_height = doc.at("tile").at("tunnel_height").get<double>();
        m.level_height = doc.at("tile").at("level_height").get<double>();
        auto gs = doc.at("global_scale").get<std::vector<double>>();
        m.global_scale = {gs.at(0), gs.at(1), gs.at(2)};

        for (const auto& jp : doc.at("placements")) {
            TilePlacement tp;
            tp.level = jp.at("level").get<int>();
            tp.cell = {jp.at("x").get<int>(), jp.at("y").get<int>()};
            auto kind = asset_kind_from_name(jp.at("type").get<std::string>());
            if (!kind) throw ValidationError("manifest parse: unknown placement type");
            tp.kind = *kind;
            tp.rotation = jp.at("rotation").get<int>();
            tp.asset_id = jp.at("asset").get<std::string>();
            auto tr = jp.at("translation").get<std::vector<double>>();
            tp.translation = {tr.at(0), tr.at(1), tr.at(2)};
            m.placements.push_back(std::move(tp));
        }
        for (const auto& jo : doc.at("obstacles")) {
            ObstaclePlacement op;
            auto pos = jo.at("position").get<std::vector<double>>();
            op.position = {pos.at(0), pos.at(1), pos.at(2)};
            op.asset_id = jo.at("asset").get<std::string>();
            op.scale = jo.at("scale").get<double>();
            m.obstacles.push_back(std::move(op));
        }
        for (const auto& js : doc.at("shafts")) {
            m.shafts.push_back({js.at("level").get<int>(),
                                {js.at("x").get<int>(), js.at("y").get<int>()}});
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("manifest parse: ") + e.what());
    }
}

std::string emit_world_sdf(const WorldManifest& manifest, const std::string& mesh_uri) {
    std::string models;
    if (!manifest.placements.empty() || !manifest.obstacles.empty()) {
        models = mesh_model_xml("cave", "0 0 0 0 0 0", mesh_uri, "", material_xml(nullptr));
    }
    return world_wrap(models);
}

SplitWorld emit_world_split(const WorldManifest& manifest, const TileCatalog& catalog) {
    SplitWorld out;
    const double pivot = manifest.tile_footprint / 2.0;
    std::string models;

    for (const TilePlacement& tp : manifest.placements) {
        std::string mesh_name =
            "tiles/" + tp.asset_id + "_r" + std::to_string(tp.rotation) + ".obj";
        if (!out.meshes.count(mesh_name)) {
            const TileAsset* asset = find_asset(catalog, tp.asset_id);
            MeshTransform bake;
            bake.plan_rotation = tp.rotation;
            bake.pivot_x = pivot;
            bake.pivot_y = pivot;
            out.meshes.emplace(mesh_name, transform_mesh(asset_geometry(catalog, *asset), bake));
        }
        std::string name = "tile_" + std::to_string(tp.level) + "_" + std::to_string(tp.cell.y) +
                           "_" + std::to_string(tp.cell.x);
        if (tp.kind == AssetKind::Shaft) name += "_shaft";
        models += mesh_model_xml(name, pose_line(tp.translation, manifest.global_scale), mesh_name,
                                 scale_tag(manifest.global_scale),
                                 material_xml(find_asset(catalog, tp.asset_id)));
    }

    int obstacle_index = 0;
    for (const ObstaclePlacement& op : manifest.obstacles) {
        std::string mesh_name = "obstacles/" + op.asset_id + ".obj";
        if (!out.meshes.count(mesh_name)) {
            out.meshes.emplace(mesh_name,
                               obstacle_geometry(catalog, *find_obstacle(catalog, op.asset_id)));
        }
        Vec3 s{manifest.global_scale.x * op.scale, manifest.global_scale.y * op.scale,
               manifest.global_scale.z * op.scale};
        models += mesh_model_xml("obstacle_" + std::to_string(obstacle_index++),
                                 pose_line(op.position, manifest.global_scale), mesh_name,
                                 scale_tag(s), material_xml(nullptr));
    }

    out.sdf = world_wrap(models);
    return out;
}

} // namespace cavegen
