#include "syncap/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace syncap::kern {

namespace scalar {

static std::uint64_t popcount_(const std::uint64_t* w, std::size_t n) {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += std::popcount(w[i]);
    return t;
}

static std::uint64_t popcount_and_(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += std::popcount(a[i] & b[i]);
    return t;
}

static std::uint64_t popcount_andnot_(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += std::popcount(a[i] & ~b[i]);
    return t;
}

static std::uint64_t popcount_xor_(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += std::popcount(a[i] ^ b[i]);
    return t;
}

static void xor_words_(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

// Per word k, w[k] ^ (w[k] >> 1 | w[k+1] << 63) marks bit i when sequence
// bits 64k+i and 64k+i+1 differ; the mask keeps only comparisons whose
// right index is < nbits.
static std::uint64_t transition_count_(const std::uint64_t* w, std::size_t nbits) {
    if (nbits < 2) return 0;
    const std::size_t nw = (nbits + 63) >> 6;
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < nw; ++k) {
        const std::uint64_t next = (k + 1 < nw) ? w[k + 1] : 0;
        const std::uint64_t diff = w[k] ^ ((w[k] >> 1) | (next << 63));
        const std::size_t ncmp = std::min<std::size_t>(64, nbits - 1 - 64 * k);
        total += std::popcount(ncmp == 64 ? diff : diff & ((1ull << ncmp) - 1));
        if (ncmp < 64) break;
    }
    return total;
}

const Kernels kernels = {
    "scalar", popcount_, popcount_and_, popcount_andnot_, popcount_xor_, xor_words_, transition_count_,
};

} // namespace scalar

const Kernels& active() {
    static const Kernels& k = []() -> const Kernels& {
#if defined(SYNCAP_HAVE_AVX2)
        if (!std::getenv("SYNCAP_FORCE_SCALAR") && avx2::supported()) return avx2::kernels;
#endif
        return scalar::kernels;
    }();
    return k;
}

} // namespace syncap::kern
