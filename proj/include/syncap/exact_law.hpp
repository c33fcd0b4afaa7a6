#pragma once
// Exact channel law of the alpha-insertion channel at small blocklength:
// P(y|x) by dynamic program in O(|x|·|y|), the full conditional output
// distribution by enumeration of the 3^n per-position insertion classes
// (none / insert 0 / insert 1), and the conditional output entropy H(Y|X=x).

#include <cstdint>
#include <vector>

#include "syncap/bitword.hpp"
#include "syncap/guard.hpp"

namespace syncap {

inline constexpr std::size_t kEnumerationGuard = 16;

double channel_law(const BitWord& x, const BitWord& y, double alpha);

struct OutputDistribution {
    // sorted by (length, bits); probabilities sum to 1
    std::vector<std::pair<BitWord, double>> entries;
    double prob(const BitWord& y) const;
};

OutputDistribution output_distribution(const BitWord& x, double alpha);

double conditional_output_entropy(const BitWord& x, double alpha);

// Walks all 3^n insertion classes of x. Per position i the digit is 0 (no
// insertion after bit i), 1 (insert a 0) or 2 (insert a 1), with weights
// 1-alpha, alpha/2, alpha/2. For each class the sink receives the digit
// vector, the packed output (length << 40 | bits, LSB-first) and the class
// probability. Suffix re-extension after each odometer step keeps the walk
// O(3^n) amortized; packing limits n to 16.
template <class Sink>
void for_each_insertion_class(const BitWord& x, double alpha, Sink&& sink) {
    const std::size_t n = x.size();
    const double pw[3] = {1.0 - alpha, alpha / 2.0, alpha / 2.0};
    std::vector<int> digit(n, 0);
    std::vector<double> wpre(n + 1);
    std::vector<std::uint64_t> ypre(n + 1), lpre(n + 1);
    wpre[0] = 1.0;
    ypre[0] = 0;
    lpre[0] = 0;
    auto extend = [&](std::size_t i) {
        const int d = digit[i];
        std::uint64_t yb = ypre[i], len = lpre[i];
        yb |= std::uint64_t(x.get(i)) << len;
        ++len;
        if (d) {
            yb |= std::uint64_t(d - 1) << len;
            ++len;
        }
        wpre[i + 1] = wpre[i] * pw[d];
        ypre[i + 1] = yb;
        lpre[i + 1] = len;
    };
    for (std::size_t i = 0; i < n; ++i) extend(i);
    for (;;) {
        sink(digit, (lpre[n] << 40) | ypre[n], wpre[n]);
        std::size_t i = n;
        while (i > 0 && digit[i - 1] == 2) digit[--i] = 0;
        if (i == 0) break;
        ++digit[i - 1];
        for (std::size_t k = i - 1; k < n; ++k) extend(k);
    }
}

// -p*log2(p), with 0 at p = 0
double nplog2p(double p);

} // namespace syncap
