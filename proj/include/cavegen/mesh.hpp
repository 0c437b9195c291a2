#pragma once

#include <array>
#include <string>
#include <vector>

#include "cavegen/errors.hpp"

namespace cavegen {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Vec3&) const = default;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces; // 0-based vertex indices

    bool operator==(const Mesh&) const = default;
};

struct Aabb {
    Vec3 lo{0, 0, 0};
    Vec3 hi{0, 0, 0};
};

Aabb bounding_box(const Mesh& m);

// ASCII OBJ with v/f lines, 1-based indices, 6-decimal coordinates. Only
// geometry is written; materials and normals are out of scope.
std::string write_obj(const Mesh& m);

struct ObjParse {
    Mesh mesh;
    int fan_triangulated = 0; // polygons wider than 3 that were split
};

// Accepts v/f lines, ignores vt/vn/comments/usemtl. Faces with more than
// three corners are fan-triangulated (counted so callers can warn).
ObjParse parse_obj(const std::string& text);

// Plan rotation by quarter turns around (pivot_x, pivot_y): the same
// (x, y) -> (-y, x) map the grid uses, applied to mesh coordinates. z is
// untouched.
Vec3 rotate_plan_cw(Vec3 v, int times, double pivot_x, double pivot_y);

struct MeshTransform {
    int plan_rotation = 0; // quarter turns about the footprint center
    double pivot_x = 0.0;
    double pivot_y = 0.0;
    Vec3 translate;
    Vec3 scale{1.0, 1.0, 1.0}; // applied last, componentwise
};

Vec3 apply_transform(Vec3 v, const MeshTransform& t);

Mesh transform_mesh(Mesh m, const MeshTransform& t);

// Appends src to dst, re-indexing faces past dst's existing vertices.
void append_mesh(Mesh& dst, const Mesh& src);

// Edges used by exactly one triangle. Empty for a watertight mesh; for the
// builtin tiles these are precisely the port mouth loops.
std::vector<std::array<int, 2>> boundary_edges(const Mesh& m);

} // namespace cavegen
