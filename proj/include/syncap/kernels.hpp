#pragma once
// Bit-packed reduction kernels over little-endian 64-bit words (bit i of a
// sequence lives in word i/64 at position i%64). Scalar reference
// implementations plus AVX2 variants; the active set is chosen once at
// runtime from CPU capabilities. SYNCAP_FORCE_SCALAR=1 in the environment
// pins the scalar set regardless of CPU support.

#include <cstddef>
#include <cstdint>

namespace syncap::kern {

struct Kernels {
    const char* name;
    std::uint64_t (*popcount)(const std::uint64_t* w, std::size_t nwords);
    std::uint64_t (*popcount_and)(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
    std::uint64_t (*popcount_andnot)(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords); // a & ~b
    std::uint64_t (*popcount_xor)(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
    void (*xor_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
    // number of i in [1, nbits) whose bit differs from bit i-1 (runs - 1)
    std::uint64_t (*transition_count)(const std::uint64_t* w, std::size_t nbits);
};

namespace scalar {
extern const Kernels kernels;
}

#if defined(SYNCAP_HAVE_AVX2)
namespace avx2 {
extern const Kernels kernels;
bool supported();
}
#endif

const Kernels& active();

} // namespace syncap::kern
