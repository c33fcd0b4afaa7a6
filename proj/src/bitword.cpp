#include "syncap/bitword.hpp"

#include <bit>

namespace syncap {

RunDecomposition decompose_runs(const BitWord& x) {
    RunDecomposition rd;
    const std::size_t n = x.size();
    if (n == 0) return rd;
    rd.first_symbol = x.get(0);
    const auto& w = x.words();
    const std::size_t nw = w.size();
    std::uint64_t prev_start = 0; // start index of the current run
    for (std::size_t k = 0; k < nw; ++k) {
        // bit j marks a run boundary at sequence index 64k+j (differs from predecessor)
        std::uint64_t d = w[k] ^ ((w[k] << 1) | (k ? (w[k - 1] >> 63) : (w[k] & 1)));
        if (k == nw - 1) {
            const std::size_t r = n & 63;
            if (r) d &= (1ull << r) - 1;
        }
        while (d) {
            const std::uint64_t pos = 64 * k + std::countr_zero(d);
            rd.lengths.push_back(std::uint32_t(pos - prev_start));
            prev_start = pos;
            d &= d - 1;
        }
    }
    rd.lengths.push_back(std::uint32_t(n - prev_start));
    return rd;
}

} // namespace syncap
