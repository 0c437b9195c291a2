#include "cavegen/worldspec.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace cavegen {

namespace {

struct IntRange {
    int lo = 0;
    int hi = 0;
};

struct PresetTable {
    std::string_view name;
    int levels;
    int harmonics;
    double length_lo, length_hi; // meters
    double width_lo, width_hi;   // meters
    IntRange loops, junctions, intersections;
    double obstacle_density;
};

// Parameter ranges per environment family. Lengths and widths are drawn
// uniformly; unit counts are drawn per level.
constexpr PresetTable kPresets[3] = {
    {"operational-mine", 3, 0, 2000.0, 4000.0, 80.0, 100.0, {0, 0}, {0, 2}, {0, 2}, 0.15},
    {"natural-cave", 1, 1, 1000.0, 2000.0, 40.0, 50.0, {0, 2}, {1, 3}, {1, 3}, 0.35},
    {"lava-tube", 5, 2, 3000.0, 5000.0, 40.0, 50.0, {0, 0}, {1, 3}, {0, 1}, 0.25},
};

const PresetTable* find_preset(std::string_view name) {
    for (const PresetTable& p : kPresets)
        if (p.name == name) return &p;
    return nullptr;
}

StructuralRequest request_from_json(const nlohmann::json& j) {
    StructuralRequest r;
    r.loops = j.value("loops", 0);
    r.junctions = j.value("junctions", 0);
    r.intersections = j.value("intersections", 0);
    r.random_fill = j.value("random_fill", 0);
    return r;
}

} // namespace

void EnvironmentSpec::validate() const {
    dims.validate();
    route.validate();
    if (units.size() != static_cast<std::size_t>(dims.levels)) {
        throw ValidationError("spec: need one unit request per level (" +
                              std::to_string(units.size()) + " given, " +
                              std::to_string(dims.levels) + " levels)");
    }
    for (const StructuralRequest& r : units) {
        if (r.loops < 0 || r.junctions < 0 || r.intersections < 0 || r.random_fill < 0) {
            throw ValidationError("spec: unit counts must be >= 0");
        }
    }
    if (!(min_length_m > 0.0)) throw ValidationError("spec: min_length_m must be > 0");
    if (!(max_width_m > 0.0)) throw ValidationError("spec: max_width_m must be > 0");
    if (obstacle_density < 0.0) throw ValidationError("spec: obstacle_density must be >= 0");
    if (!(penalty > 1.0)) throw ValidationError("spec: penalty must be > 1");
}

bool is_preset_name(std::string_view name) { return find_preset(name) != nullptr; }

int default_grid_edge(const std::vector<StructuralRequest>& units) {
    int largest = 0;
    for (const StructuralRequest& r : units) largest = std::max(largest, r.total());
    return std::max(12, 6 * largest);
}

EnvironmentSpec resolve_preset(std::string_view name, Rng& rng) {
    const PresetTable* p = find_preset(name);
    if (!p) throw ValidationError("unknown preset '" + std::string(name) + "'");

    EnvironmentSpec spec;
    spec.preset = std::string(p->name);
    spec.route.harmonics = p->harmonics;
    spec.obstacle_density = p->obstacle_density;

    spec.min_length_m = rng.uniform_real(p->length_lo, p->length_hi);
    spec.max_width_m = rng.uniform_real(p->width_lo, p->width_hi);

    spec.units.clear();
    for (int level = 0; level < p->levels; ++level) {
        StructuralRequest r;
        r.loops = rng.uniform_int(p->loops.lo, p->loops.hi);
        r.junctions = rng.uniform_int(p->junctions.lo, p->junctions.hi);
        r.intersections = rng.uniform_int(p->intersections.lo, p->intersections.hi);
        spec.units.push_back(r);
    }

    // Fixed footprint per preset (range maxima), not per drawn counts, so
    // every world of a family shares a frame.
    std::vector<StructuralRequest> maxima{
        {p->loops.hi, p->junctions.hi, p->intersections.hi, 0}};
    int edge = default_grid_edge(maxima);
    spec.dims = {p->levels, edge, edge};

    spec.validate();
    return spec;
}

EnvironmentSpec spec_from_json(const std::string& text, EnvironmentSpec base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config parse: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config parse: top level must be an object");

    static const std::set<std::string> known{
        "preset",       "seed",        "dims",          "route",   "units",
        "min_length_m", "max_width_m", "obstacle_density", "penalty", "textures",
        "catalog"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!known.count(key)) throw ValidationError("config: unknown key '" + key + "'");
    }

    EnvironmentSpec spec = std::move(base);
    bool dims_given = doc.contains("dims");
    try {
        if (doc.contains("preset")) spec.preset = doc.at("preset").get<std::string>();
        if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
        if (dims_given) {
            const auto& jd = doc.at("dims");
            spec.dims = {jd.at("levels").get<int>(), jd.at("rows").get<int>(),
                         jd.at("cols").get<int>()};
        }
        if (doc.contains("route")) {
            const auto& jr = doc.at("route");
            spec.route.harmonics = jr.value("harmonics", spec.route.harmonics);
            spec.route.amplitude_fraction =
                jr.value("amplitude_fraction", spec.route.amplitude_fraction);
            spec.route.sampling_factor = jr.value("sampling_factor", spec.route.sampling_factor);
        }
        if (doc.contains("units")) {
            const auto& ju = doc.at("units");
            spec.units.clear();
            if (ju.is_array()) {
                // Explicit per-level list; the count must match the levels.
                for (const auto& j : ju) spec.units.push_back(request_from_json(j));
                if (!dims_given) {
                    int edge = default_grid_edge(spec.units);
                    spec.dims = {static_cast<int>(spec.units.size()), edge, edge};
                }
            } else {
                // One request replicated over however many levels the spec
                // has at this point (dims block, preset, or default).
                spec.units.assign(static_cast<std::size_t>(spec.dims.levels),
                                  request_from_json(ju));
            }
        }
        if (doc.contains("min_length_m")) spec.min_length_m = doc.at("min_length_m").get<double>();
        if (doc.contains("max_width_m")) spec.max_width_m = doc.at("max_width_m").get<double>();
        if (doc.contains("obstacle_density"))
            spec.obstacle_density = doc.at("obstacle_density").get<double>();
        if (doc.contains("penalty")) spec.penalty = doc.at("penalty").get<double>();
        if (doc.contains("textures")) {
            for (const auto& [slot, tex] : doc.at("textures").items()) {
                spec.textures[slot] = tex.get<std::string>();
            }
        }
        if (doc.contains("catalog"))
            spec.catalog_path = doc.at("catalog").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config parse: ") + e.what());
    }

    spec.validate();
    return spec;
}

} // namespace cavegen
