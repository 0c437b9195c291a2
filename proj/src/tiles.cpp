#include "cavegen/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

#include "cavegen/textfmt.hpp"

namespace cavegen {

namespace {

// Shared-vertex mesh builder so tile walls stitch exactly and boundary-edge
// extraction sees one edge per physical edge.
struct MeshBuilder {
    Mesh mesh;
    std::map<std::tuple<double, double, double>, int> index;

    int vertex(double x, double y, double z) {
        auto key = std::make_tuple(x, y, z);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({x, y, z});
        index.emplace(key, id);
        return id;
    }

    void quad(Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
        int ia = vertex(a.x, a.y, a.z);
        int ib = vertex(b.x, b.y, b.z);
        int ic = vertex(c.x, c.y, c.z);
        int id = vertex(d.x, d.y, d.z);
        mesh.faces.push_back({ia, ib, ic});
        mesh.faces.push_back({ia, ic, id});
    }
};

// Sub-cell layout of a tile: 3x3 plan cells with the middle band one tunnel
// width wide. The center cell is always part of the tunnel; each open port
// direction adds its strip cell.
Mesh tunnel_mesh(unsigned ports, double width, double height) {
    const double t = 2.0 * width;
    const double bands[4] = {0.0, width / 2.0, 1.5 * width, t};

    bool included[3][3] = {};
    included[1][1] = true;
    if (ports & kMaskUp) included[1][0] = true;
    if (ports & kMaskDown) included[1][2] = true;
    if (ports & kMaskLeft) included[0][1] = true;
    if (ports & kMaskRight) included[2][1] = true;

    auto inside = [&](int cx, int cy) { return cx >= 0 && cx < 3 && cy >= 0 && cy < 3; };

    MeshBuilder b;
    for (int cy = 0; cy < 3; ++cy) {
        for (int cx = 0; cx < 3; ++cx) {
            if (!included[cx][cy]) continue;
            double x0 = bands[cx], x1 = bands[cx + 1];
            double y0 = bands[cy], y1 = bands[cy + 1];

            b.quad({x0, y0, 0}, {x1, y0, 0}, {x1, y1, 0}, {x0, y1, 0});                 // floor
            b.quad({x0, y0, height}, {x0, y1, height}, {x1, y1, height}, {x1, y0, height}); // ceiling

            struct Side {
                int nx, ny;          // neighbor sub-cell
                Vec3 a, b;           // bottom edge of the would-be wall
            };
            const Side sides[4] = {
                {cx, cy - 1, {x0, y0, 0}, {x1, y0, 0}}, // toward up
                {cx, cy + 1, {x1, y1, 0}, {x0, y1, 0}}, // toward down
                {cx - 1, cy, {x0, y1, 0}, {x0, y0, 0}}, // toward left
                {cx + 1, cy, {x1, y0, 0}, {x1, y1, 0}}, // toward right
            };
            for (const Side& s : sides) {
                if (inside(s.nx, s.ny)) {
                    if (included[s.nx][s.ny]) continue; // open passage
                } else {
                    continue; // tile boundary: only strips reach it, as port mouths
                }
                b.quad(s.a, s.b, {s.b.x, s.b.y, height}, {s.a.x, s.a.y, height});
            }
        }
    }
    return std::move(b.mesh);
}

Mesh shaft_mesh(double width, double span) {
    const double lo = width / 2.0;
    const double hi = 1.5 * width;
    MeshBuilder b;
    // Open-ended square tube between the two levels.
    b.quad({lo, lo, 0}, {hi, lo, 0}, {hi, lo, span}, {lo, lo, span});
    b.quad({hi, hi, 0}, {lo, hi, 0}, {lo, hi, span}, {hi, hi, span});
    b.quad({lo, hi, 0}, {lo, lo, 0}, {lo, lo, span}, {lo, hi, span});
    b.quad({hi, lo, 0}, {hi, hi, 0}, {hi, hi, span}, {hi, lo, span});
    return std::move(b.mesh);
}

const char* kKindNames[6] = {"deadend", "pathway", "corner", "junction", "intersection", "shaft"};

} // namespace

AssetKind asset_kind_for(TopoType t) { return static_cast<AssetKind>(t); }

const char* asset_kind_name(AssetKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<AssetKind> asset_kind_from_name(std::string_view name) {
    for (std::size_t i = 0; i < 6; ++i) {
        if (name == kKindNames[i]) return static_cast<AssetKind>(i);
    }
    return std::nullopt;
}

std::vector<const TileAsset*> TileCatalog::group(AssetKind kind) const {
    std::vector<const TileAsset*> out;
    for (const TileAsset& a : assets)
        if (a.kind == kind) out.push_back(&a);
    return out;
}

void TileCatalog::validate() const {
    if (!(footprint > 0.0) || !(tunnel_height > 0.0) || !(level_height > 0.0)) {
        throw ValidationError("catalog: footprint, tunnel_height and level_height must be > 0");
    }
    std::set<std::string> ids;
    for (const TileAsset& a : assets) {
        if (!ids.insert(a.id).second) throw ValidationError("catalog: duplicate asset id " + a.id);
        if (a.footprint != footprint) {
            throw ValidationError("catalog: asset " + a.id +
                                  " footprint differs from the shared tile size");
        }
    }
    for (AssetKind kind : {AssetKind::Deadend, AssetKind::Pathway, AssetKind::Corner,
                           AssetKind::Junction, AssetKind::Intersection, AssetKind::Shaft}) {
        if (group(kind).empty()) {
            throw ValidationError(std::string("catalog: no asset for tile group '") +
                                  asset_kind_name(kind) + "'");
        }
    }
}

std::vector<TileAsset> builtin_tiles(double tunnel_width, double tunnel_height,
                                     double level_height) {
    if (!(tunnel_width > 0.0) || !(tunnel_height > 0.0) || !(level_height > 0.0)) {
        throw ValidationError("builtin tiles: dimensions must be positive");
    }
    const double t = 2.0 * tunnel_width;
    std::vector<TileAsset> tiles;

    for (TopoType type : kTopoTypes) {
        TileAsset a;
        a.id = std::string("builtin_") + topo_name(type);
        a.kind = asset_kind_for(type);
        a.ports = canonical_ports(type);
        a.mesh = tunnel_mesh(a.ports, tunnel_width, tunnel_height);
        a.footprint = t;
        a.height = tunnel_height;
        tiles.push_back(std::move(a));
    }

    TileAsset shaft;
    shaft.id = "builtin_shaft";
    shaft.kind = AssetKind::Shaft;
    shaft.ports = 0;
    shaft.mesh = shaft_mesh(tunnel_width, level_height);
    shaft.footprint = t;
    shaft.height = level_height;
    tiles.push_back(std::move(shaft));
    return tiles;
}

ObstacleAsset builtin_rock() {
    // Unit octahedron resting on the ground plane.
    ObstacleAsset rock;
    rock.id = "builtin_rock";
    rock.size = 1.0;
    rock.mesh.vertices = {{0, 0, 0},      {0.5, 0, 0.5}, {0, 0.5, 0.5},
                          {-0.5, 0, 0.5}, {0, -0.5, 0.5}, {0, 0, 1.0}};
    rock.mesh.faces = {{0, 2, 1}, {0, 3, 2}, {0, 4, 3}, {0, 1, 4},
                       {5, 1, 2}, {5, 2, 3}, {5, 3, 4}, {5, 4, 1}};
    return rock;
}

TileCatalog builtin_catalog() {
    TileCatalog c;
    c.footprint = 2.0 * kDefaultTunnelWidth;
    c.tunnel_height = kDefaultTunnelHeight;
    c.level_height = kDefaultLevelHeight;
    c.assets = builtin_tiles(kDefaultTunnelWidth, kDefaultTunnelHeight, kDefaultLevelHeight);
    c.obstacles = {builtin_rock()};
    return c;
}

TileCatalog load_catalog(const std::string& json_text, bool allow_builtin_fallback) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("catalog parse: ") + e.what());
    }

    TileCatalog c;
    try {
        c.footprint = doc.value("tile_footprint", 2.0 * kDefaultTunnelWidth);
        c.tunnel_height = doc.value("tunnel_height", kDefaultTunnelHeight);
        c.level_height = doc.value("level_height", kDefaultLevelHeight);

        for (const auto& ja : doc.value("assets", nlohmann::json::array())) {
            TileAsset a;
            a.id = ja.at("id").get<std::string>();
            std::string type = ja.at("type").get<std::string>();
            auto kind = asset_kind_from_name(type);
            if (!kind) throw ValidationError("catalog: unknown tile type '" + type + "'");
            a.kind = *kind;
            a.mesh_path = ja.at("mesh").get<std::string>();
            auto size = ja.at("size").get<std::vector<double>>();
            if (size.size() != 3) throw ValidationError("catalog: size must be [w, l, h]");
            if (size[0] != size[1]) {
                throw ValidationError("catalog: asset " + a.id +
                                      " footprint must be square (width == length)");
            }
            a.footprint = size[0];
            a.height = size[2];
            a.ports = a.kind == AssetKind::Shaft
                          ? 0
                          : canonical_ports(static_cast<TopoType>(a.kind));
            // items() keeps a reference to its target, so the lookup needs a home.
            const nlohmann::json textures = ja.value("textures", nlohmann::json::object());
            for (const auto& [slot, tex] : textures.items()) {
                a.textures[slot] = tex.get<std::string>();
            }
            c.assets.push_back(std::move(a));
        }
        for (const auto& jo : doc.value("obstacles", nlohmann::json::array())) {
            ObstacleAsset o;
            o.id = jo.at("id").get<std::string>();
            o.mesh_path = jo.at("mesh").get<std::string>();
            o.size = jo.value("size", 1.0);
            c.obstacles.push_back(std::move(o));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("catalog parse: ") + e.what());
    }

    if (allow_builtin_fallback) {
        double width = c.footprint / 2.0;
        auto builtins = builtin_tiles(width, c.tunnel_height, c.level_height);
        for (TileAsset& b : builtins) {
            if (c.group(b.kind).empty()) c.assets.push_back(std::move(b));
        }
        if (c.obstacles.empty()) c.obstacles.push_back(builtin_rock());
    }
    c.validate();
    return c;
}

std::string catalog_summary(const TileCatalog& catalog) {
    std::string out = "tile footprint " + fmt_fixed(catalog.footprint, 1) +
                      " m, tunnel height " + fmt_fixed(catalog.tunnel_height, 1) +
                      " m, level offset " + fmt_fixed(catalog.level_height, 1) + " m\n";
    for (AssetKind kind : {AssetKind::Deadend, AssetKind::Pathway, AssetKind::Corner,
                           AssetKind::Junction, AssetKind::Intersection, AssetKind::Shaft}) {
        auto members = catalog.group(kind);
        out += std::string(asset_kind_name(kind)) + ": " + std::to_string(members.size());
        for (const TileAsset* a : members) out += " " + a->id;
        out += "\n";
    }
    out += "obstacles: " + std::to_string(catalog.obstacles.size()) + "\n";
    return out;
}

} // namespace cavegen
