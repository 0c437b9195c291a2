#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cavegen/grid.hpp"

namespace cavegen {

inline constexpr int kOccupancyFormatVersion = 1;

struct OccupancyDoc {
    OccupancyGrid grid;
    std::uint64_t seed = 0;
};

// Compact JSON document: {format_version, dims{l,m,n}, seed, levels, shafts}
// with each level an array of m row-strings of '0'/'1'. Field order is
// canonical so equal worlds serialize byte-identically.
std::string serialize_occupancy(const OccupancyGrid& grid, std::uint64_t seed);

// Strict parse; malformed documents raise ValidationError with a location.
OccupancyDoc parse_occupancy(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

// Write-temp-then-rename so readers never observe a half-written file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace cavegen
