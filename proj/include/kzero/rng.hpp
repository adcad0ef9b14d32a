#pragma once

#include <cstdint>

namespace kzero {

// Counter-based deterministic generator (splitmix64). Each output is a hash
// of seed + k*gamma, so parallel workers can derive independent streams by
// perturbing the seed; no shared state anywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in {0,1,2} without rejection (bias ~2^-64).
    int next_trit() {
        return static_cast<int>((static_cast<unsigned __int128>(next()) * 3) >> 64);
    }

    bool next_bit() { return (next() >> 63) != 0; }
};

} // namespace kzero
