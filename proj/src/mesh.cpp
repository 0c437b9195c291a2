#include "cavegen/mesh.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "cavegen/textfmt.hpp"

namespace cavegen {

Aabb bounding_box(const Mesh& m) {
    if (m.vertices.empty()) return {};
    Aabb box{m.vertices.front(), m.vertices.front()};
    for (const Vec3& v : m.vertices) {
        box.lo = {std::min(box.lo.x, v.x), std::min(box.lo.y, v.y), std::min(box.lo.z, v.z)};
        box.hi = {std::max(box.hi.x, v.x), std::max(box.hi.y, v.y), std::max(box.hi.z, v.z)};
    }
    return box;
}

std::string write_obj(const Mesh& m) {
    std::string out;
    out.reserve(m.vertices.size() * 32 + m.faces.size() * 16);
    for (const Vec3& v : m.vertices) {
        out += "v " + fmt_fixed(v.x, 6) + " " + fmt_fixed(v.y, 6) + " " + fmt_fixed(v.z, 6) + "\n";
    }
    for (const auto& f : m.faces) {
        out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
               std::to_string(f[2] + 1) + "\n";
    }
    return out;
}

ObjParse parse_obj(const std::string& text) {
    ObjParse result;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) {
                throw ValidationError("obj parse: bad vertex at line " + std::to_string(line_no));
            }
            result.mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> corners;
            std::string token;
            while (ls >> token) {
                // "idx", "idx/uv", "idx/uv/normal" all start with the index.
                int idx = std::atoi(token.c_str());
                if (idx == 0) {
                    throw ValidationError("obj parse: bad face index at line " +
                                          std::to_string(line_no));
                }
                if (idx < 0) idx = static_cast<int>(result.mesh.vertices.size()) + idx + 1;
                if (idx < 1 || idx > static_cast<int>(result.mesh.vertices.size())) {
                    throw ValidationError("obj parse: face index out of range at line " +
                                          std::to_string(line_no));
                }
                corners.push_back(idx - 1);
            }
            if (corners.size() < 3) {
                throw ValidationError("obj parse: face with fewer than 3 corners at line " +
                                      std::to_string(line_no));
            }
            if (corners.size() > 3) ++result.fan_triangulated;
            for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
                result.mesh.faces.push_back({corners[0], corners[i], corners[i + 1]});
            }
        }
        // vt/vn/vp/usemtl/mtllib/o/g/s/# are ignored.
    }
    return result;
}

Vec3 rotate_plan_cw(Vec3 v, int times, double pivot_x, double pivot_y) {
    double x = v.x - pivot_x;
    double y = v.y - pivot_y;
    for (int i = 0; i < (times & 3); ++i) {
        double nx = -y;
        double ny = x;
        x = nx;
        y = ny;
    }
    return {x + pivot_x, y + pivot_y, v.z};
}

Vec3 apply_transform(Vec3 v, const MeshTransform& t) {
    v = rotate_plan_cw(v, t.plan_rotation, t.pivot_x, t.pivot_y);
    v = v + t.translate;
    return {v.x * t.scale.x, v.y * t.scale.y, v.z * t.scale.z};
}

Mesh transform_mesh(Mesh m, const MeshTransform& t) {
    for (Vec3& v : m.vertices) v = apply_transform(v, t);
    return m;
}

void append_mesh(Mesh& dst, const Mesh& src) {
    int base = static_cast<int>(dst.vertices.size());
    dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
    dst.faces.reserve(dst.faces.size() + src.faces.size());
    for (const auto& f : src.faces) {
        dst.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    }
}

std::vector<std::array<int, 2>> boundary_edges(const Mesh& m) {
    std::map<std::pair<int, int>, int> uses;
    for (const auto& f : m.faces) {
        for (int i = 0; i < 3; ++i) {
            int a = f[static_cast<std::size_t>(i)];
            int b = f[static_cast<std::size_t>((i + 1) % 3)];
            uses[{std::min(a, b), std::max(a, b)}] += 1;
        }
    }
    std::vector<std::array<int, 2>> edges;
    for (const auto& [edge, count] : uses) {
        if (count == 1) edges.push_back({edge.first, edge.second});
    }
    return edges;
}

} // namespace cavegen
