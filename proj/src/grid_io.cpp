#include "cavegen/grid_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cavegen {

using ordered_json = nlohmann::ordered_json;

std::string serialize_occupancy(const OccupancyGrid& grid, std::uint64_t seed) {
    const GridDims& d = grid.dims();
    ordered_json doc;
    doc["format_version"] = kOccupancyFormatVersion;
    doc["dims"] = {{"l", d.levels}, {"m", d.rows}, {"n", d.cols}};
    doc["seed"] = seed;

    ordered_json levels = ordered_json::array();
    for (int k = 0; k < d.levels; ++k) {
        ordered_json rows = ordered_json::array();
        for (int y = 0; y < d.rows; ++y) {
            std::string row(static_cast<std::size_t>(d.cols), '0');
            for (int x = 0; x < d.cols; ++x)
                if (grid.occupied(k, {x, y})) row[static_cast<std::size_t>(x)] = '1';
            rows.push_back(row);
        }
        levels.push_back(std::move(rows));
    }
    doc["levels"] = std::move(levels);

    ordered_json shafts = ordered_json::array();
    for (const ShaftLink& s : grid.shafts()) {
        shafts.push_back({{"level", s.level}, {"x", s.cell.x}, {"y", s.cell.y}});
    }
    doc["shafts"] = std::move(shafts);

    return doc.dump(1) + "\n";
}

OccupancyDoc parse_occupancy(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("occupancy parse: ") + e.what());
    }

    try {
        int version = doc.at("format_version").get<int>();
        if (version != kOccupancyFormatVersion) {
            throw ValidationError("occupancy parse: unsupported format_version " +
                                  std::to_string(version));
        }
        const auto& jd = doc.at("dims");
        GridDims dims{jd.at("l").get<int>(), jd.at("m").get<int>(), jd.at("n").get<int>()};
        dims.validate();

        OccupancyDoc result{OccupancyGrid(dims), doc.at("seed").get<std::uint64_t>()};

        const auto& levels = doc.at("levels");
        if (static_cast<int>(levels.size()) != dims.levels) {
            throw ValidationError("occupancy parse: level count does not match dims.l");
        }
        for (int k = 0; k < dims.levels; ++k) {
            const auto& rows = levels.at(static_cast<std::size_t>(k));
            if (static_cast<int>(rows.size()) != dims.rows) {
                throw ValidationError("occupancy parse: row count mismatch at level " +
                                      std::to_string(k));
            }
            for (int y = 0; y < dims.rows; ++y) {
                const std::string row = rows.at(static_cast<std::size_t>(y)).get<std::string>();
                if (static_cast<int>(row.size()) != dims.cols) {
                    throw ValidationError("occupancy parse: row length mismatch at level " +
                                          std::to_string(k) + " row " + std::to_string(y));
                }
                for (int x = 0; x < dims.cols; ++x) {
                    char c = row[static_cast<std::size_t>(x)];
                    if (c == '1') {
                        result.grid.set(k, {x, y});
                    } else if (c != '0') {
                        throw ValidationError("occupancy parse: bad cell character at level " +
                                              std::to_string(k) + " row " + std::to_string(y));
                    }
                }
            }
        }

        std::vector<ShaftLink> shafts;
        for (const auto& js : doc.at("shafts")) {
            shafts.push_back(
                {js.at("level").get<int>(), {js.at("x").get<int>(), js.at("y").get<int>()}});
        }
        result.grid.set_shafts(std::move(shafts));
        return result;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("occupancy parse: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path.string());
    return std::move(buf).str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

} // namespace cavegen
