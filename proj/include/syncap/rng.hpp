#pragma once
// Seeded draws for the samplers. mt19937_64 itself is fully specified by the
// standard; the mappings to uniforms/bits are done here by hand because the
// standard library distribution objects are implementation-defined and would
// break cross-toolchain reproducibility.

#include <cstdint>
#include <random>

namespace syncap {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// counter-based stream split: trial t of a root seed gets its own seed,
// independent of how trials are scheduled across workers
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(splitmix64(root) ^ splitmix64(stream * 0x9e3779b97f4a7c15ull + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; } // [0, 1)
    bool bernoulli(double p) { return uniform() < p; }
    bool bit() { return eng_() >> 63; }

    // index in [0, n) via 128-bit multiply (bias < 2^-40 for n <= 2^24)
    std::uint64_t below(std::uint64_t n) {
        return std::uint64_t((unsigned __int128)eng_() * n >> 64);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace syncap
