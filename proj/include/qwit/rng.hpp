#pragma once

#include <cstdint>
#include <random>

namespace qwit::rng {

// splitmix64 step, used to decorrelate seeds derived from small integers.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent substream for a given work index. Results are a pure function
// of (master, index), so any partitioning of indices over workers reproduces
// the same draws.
inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = splitmix64(master ^ splitmix64(index));
    return std::mt19937_64(s);
}

}  // namespace qwit::rng
