#pragma once

#include <cstdint>
#include <string_view>

namespace cavegen {

// PCG32 (Melissa O'Neill's pcg32_oneseq). We roll our own generator and
// distributions because std::uniform_int_distribution et al. are allowed to
// differ between standard libraries, and generated worlds must be
// byte-identical for a given seed on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed);

    std::uint32_t next_u32();

    // Uniform integer in [lo, hi], both ends inclusive. Lemire rejection,
    // so the result is exactly uniform (no modulo bias).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Uniform double in [0, 1). 53 effective mantissa bits.
    double uniform_real();

    // Uniform double in [lo, hi).
    double uniform_real(double lo, double hi);

    // Knuth's product-of-uniforms method. Fine for the small means we use
    // (obstacle counts per corridor); O(mean) draws per call.
    int poisson(double mean);

    // Pick an index in [0, count).
    std::size_t pick_index(std::size_t count);

private:
    std::uint64_t state_ = 0;

    std::uint32_t bounded_u32(std::uint32_t bound);
};

// SplitMix64 finalizer. Used to spread raw seeds and to combine them.
std::uint64_t mix64(std::uint64_t x);

// Deterministic sub-seed for one phase of one world: hash of the master
// seed, the world's index in its batch, and a short phase tag such as
// "structural" or "routes". Distinct tags give independent streams, so
// adding draws to one phase never perturbs another.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t world_index,
                          std::string_view phase_tag);

} // namespace cavegen
