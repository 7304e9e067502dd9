#pragma once

#include <cstdint>

namespace ratioslab {

// SplitMix64.  Each Monte-Carlo draw gets its own stream derived from
// (seed, draw index), so results are reproducible for any thread count and
// any assignment of draws to workers.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    // One extra mixing round keeps nearby (seed, stream) pairs uncorrelated.
    SplitMix64 m(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    m.next();
    return m.next();
}

}  // namespace ratioslab
