#pragma once

#include <cstdint>
#include <random>

namespace ppsim {

// splitmix64 step; used to derive independent engine seeds from one
// scenario seed plus a stream index.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream splitting rule: engine seed = splitmix64 applied twice to
// (seed ^ golden-ratio-mixed stream index). Streams with distinct
// indices are independent for simulation purposes.
inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

inline double uniform01(std::mt19937_64& rng) {
    // 53-bit uniform in [0,1)
    return (rng() >> 11) * 0x1.0p-53;
}

}  // namespace ppsim
