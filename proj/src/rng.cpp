#include "cavegen/rng.hpp"

#include <cmath>

namespace cavegen {

namespace {

constexpr std::uint64_t kPcgMult = 6364136223846793005ULL;
constexpr std::uint64_t kPcgInc = 1442695040888963407ULL;

} // namespace

void Rng::reseed(std::uint64_t seed) {
    // Standard pcg32_oneseq seeding: advance once, add seed, advance again.
    state_ = 0;
    next_u32();
    state_ += mix64(seed);
    next_u32();
}

std::uint32_t Rng::next_u32() {
    std::uint64_t old = state_;
    state_ = old * kPcgMult + kPcgInc;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint32_t Rng::bounded_u32(std::uint32_t bound) {
    // Lemire's multiply-shift with rejection of the biased low range.
    std::uint64_t m = std::uint64_t(next_u32()) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
        std::uint32_t threshold = (0u - bound) % bound;
        while (low < threshold) {
            m = std::uint64_t(next_u32()) * bound;
            low = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo >= hi) return lo;
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span <= 0xFFFFFFFFULL) {
        return lo + static_cast<std::int64_t>(bounded_u32(static_cast<std::uint32_t>(span)));
    }
    // Spans that wide never occur in practice; stitch two 32-bit draws.
    std::uint64_t raw = (std::uint64_t(next_u32()) << 32) | next_u32();
    return lo + static_cast<std::int64_t>(raw % span);
}

double Rng::uniform_real() {
    std::uint64_t raw = (std::uint64_t(next_u32()) << 32) | next_u32();
    return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

double Rng::uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
}

int Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    double product = uniform_real();
    int count = 0;
    while (product > limit) {
        product *= uniform_real();
        ++count;
    }
    return count;
}

std::size_t Rng::pick_index(std::size_t count) {
    if (count <= 1) return 0;
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(count) - 1));
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t world_index,
                          std::string_view phase_tag) {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ (world_index + 0x9E3779B97F4A7C15ULL));
    for (char c : phase_tag) {
        h = mix64(h ^ static_cast<std::uint8_t>(c));
    }
    return h;
}

} // namespace cavegen
