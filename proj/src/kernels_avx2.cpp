#if defined(SYNCAP_HAVE_AVX2)

#include "syncap/kernels.hpp"

#include <bit>
#include <immintrin.h>

namespace syncap::kern::avx2 {

bool supported() { return __builtin_cpu_supports("avx2"); }

// byte-wise popcount via nibble lookup, horizontally summed into 4 u64 lanes
static inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    const __m256i cnt =
        _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

static inline std::uint64_t hsum(__m256i acc) {
    return std::uint64_t(_mm256_extract_epi64(acc, 0)) + _mm256_extract_epi64(acc, 1) +
           _mm256_extract_epi64(acc, 2) + _mm256_extract_epi64(acc, 3);
}

static std::uint64_t popcount_(const std::uint64_t* w, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_epi64(acc, popcount256(_mm256_loadu_si256((const __m256i*)(w + i))));
    std::uint64_t t = hsum(acc);
    for (; i < n; ++i) t += std::popcount(w[i]);
    return t;
}

static std::uint64_t popcount_and_(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_and_si256(_mm256_loadu_si256((const __m256i*)(a + i)),
                                           _mm256_loadu_si256((const __m256i*)(b + i)));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    std::uint64_t t = hsum(acc);
    for (; i < n; ++i) t += std::popcount(a[i] & b[i]);
    return t;
}

static std::uint64_t popcount_andnot_(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // andnot computes ~x & y, so feed (b, a) to get a & ~b
        const __m256i v = _mm256_andnot_si256(_mm256_loadu_si256((const __m256i*)(b + i)),
                                              _mm256_loadu_si256((const __m256i*)(a + i)));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    std::uint64_t t = hsum(acc);
    for (; i < n; ++i) t += std::popcount(a[i] & ~b[i]);
    return t;
}

static std::uint64_t popcount_xor_(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_xor_si256(_mm256_loadu_si256((const __m256i*)(a + i)),
                                           _mm256_loadu_si256((const __m256i*)(b + i)));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    std::uint64_t t = hsum(acc);
    for (; i < n; ++i) t += std::popcount(a[i] ^ b[i]);
    return t;
}

static void xor_words_(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_si256((__m256i*)(dst + i),
                            _mm256_xor_si256(_mm256_loadu_si256((const __m256i*)(a + i)),
                                             _mm256_loadu_si256((const __m256i*)(b + i))));
    for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

static std::uint64_t transition_count_(const std::uint64_t* w, std::size_t nbits) {
    if (nbits < 2) return 0;
    const std::size_t nw = (nbits + 63) >> 6;
    __m256i acc = _mm256_setzero_si256();
    std::size_t k = 0;
    // vector body needs w[k+1..k+4] present and all 64 comparisons of each
    // processed word valid (true for every word except the last one)
    if (nw >= 6) {
        const std::size_t kend = nw - 5;
        for (; k + 4 <= kend; k += 4) {
            const __m256i v = _mm256_loadu_si256((const __m256i*)(w + k));
            const __m256i vn = _mm256_loadu_si256((const __m256i*)(w + k + 1));
            const __m256i d = _mm256_xor_si256(
                v, _mm256_or_si256(_mm256_srli_epi64(v, 1), _mm256_slli_epi64(vn, 63)));
            acc = _mm256_add_epi64(acc, popcount256(d));
        }
    }
    std::uint64_t total = hsum(acc);
    for (; k < nw; ++k) {
        const std::uint64_t next = (k + 1 < nw) ? w[k + 1] : 0;
        const std::uint64_t diff = w[k] ^ ((w[k] >> 1) | (next << 63));
        const std::size_t ncmp = nbits - 1 - 64 * k >= 64 ? 64 : nbits - 1 - 64 * k;
        total += std::popcount(ncmp == 64 ? diff : diff & ((1ull << ncmp) - 1));
        if (ncmp < 64) break;
    }
    return total;
}

const Kernels kernels = {
    "avx2", popcount_, popcount_and_, popcount_andnot_, popcount_xor_, xor_words_, transition_count_,
};

} // namespace syncap::kern::avx2

#endif // SYNCAP_HAVE_AVX2
