#include "syncap/exact_law.hpp"

#include <algorithm>
#include <cmath>

namespace syncap {

double nplog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// f(i, j) = P(first i input bits consumed, first j output bits produced).
// Step: emit x_i unchanged (prob 1-alpha, j-1 -> j, needs y_j = x_i), or emit
// x_i plus one inserted bit (prob alpha, value uniform so alpha/2 per choice,
// j-2 -> j, needs y_{j-1} = x_i with y_j free).
double channel_law(const BitWord& x, const BitWord& y, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("channel_law: alpha must lie in [0, 1)");
    const std::size_t n = x.size(), m = y.size();
    if (m < n || m > 2 * n) return 0.0;
    if (n == 0) return 1.0;

    const double keep = 1.0 - alpha, ins = alpha / 2.0;
    thread_local std::vector<double> prev, cur;
    prev.assign(m + 1, 0.0);
    cur.assign(m + 1, 0.0);
    prev[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const bool xi = x.get(i - 1);
        const std::size_t rest = 2 * (n - i); // max output the remaining input can add
        const std::size_t jlo = std::max(i, rest >= m ? std::size_t(0) : m - rest);
        const std::size_t jhi = std::min(m, 2 * i);
        std::fill(cur.begin(), cur.end(), 0.0);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            double f = 0.0;
            if (y.get(j - 1) == xi) f += keep * prev[j - 1];
            if (j >= 2 && y.get(j - 2) == xi) f += ins * prev[j - 2];
            cur[j] = f;
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

OutputDistribution output_distribution(const BitWord& x, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("output_distribution: alpha must lie in [0, 1)");
    check_guard(x.size(), kEnumerationGuard, "output_distribution");

    std::vector<std::pair<std::uint64_t, double>> acc;
    acc.reserve(std::size_t(std::pow(3.0, double(std::min<std::size_t>(x.size(), 12)))));
    for_each_insertion_class(x, alpha, [&](const std::vector<int>&, std::uint64_t key, double w) {
        acc.emplace_back(key, w);
    });
    std::sort(acc.begin(), acc.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    OutputDistribution dist;
    for (std::size_t i = 0; i < acc.size();) {
        std::size_t j = i;
        double p = 0.0;
        while (j < acc.size() && acc[j].first == acc[i].first) p += acc[j++].second;
        const std::uint64_t key = acc[i].first;
        // classes of weight zero (e.g. every insertion class at alpha = 0) are
        // not part of the support
        if (p > 0.0)
            dist.entries.emplace_back(BitWord::from_packed(key & ((1ull << 40) - 1), key >> 40), p);
        i = j;
    }
    return dist;
}

double OutputDistribution::prob(const BitWord& y) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), y,
                                     [](const auto& e, const BitWord& v) { return e.first < v; });
    return (it != entries.end() && it->first == y) ? it->second : 0.0;
}

double conditional_output_entropy(const BitWord& x, double alpha) {
    const auto dist = output_distribution(x, alpha);
    double h = 0.0;
    for (const auto& [y, p] : dist.entries) h += nplog2p(p);
    return h;
}

} // namespace syncap
