#include "syncap/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace syncap {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

namespace {

void check_l(std::size_t L, const char* what) {
    if (L == 0) throw std::invalid_argument(std::string(what) + ": L must be positive");
    if (L > 1060) throw std::invalid_argument(std::string(what) + ": 2^-L underflows past L = 1060");
}

} // namespace

SeriesValue e_log_l0(std::size_t L) {
    check_l(L, "e_log_l0");
    double s = 0.0;
    for (std::size_t l = L; l >= 1; --l) // smallest terms first
        s += std::ldexp(double(l) * std::log2(double(l)), -int(l) - 1);
    // l log2 l <= l^2 and sum_{l>L} l^2 2^-l = 2^-L (L^2+4L+6)
    const double dl = double(L);
    return {s, L, std::ldexp(dl * dl + 4.0 * dl + 6.0, -int(L) - 1)};
}

SeriesValue a1(std::size_t L) {
    check_l(L, "a1");
    std::vector<double> hb(L + 1); // (b+1) h(1/(b+1))
    for (std::size_t b = 1; b <= L; ++b) hb[b] = double(b + 1) * binary_entropy(1.0 / double(b + 1));
    double s = 0.0;
    for (std::size_t a = L; a >= 1; --a)
        for (std::size_t b = L; b >= 1; --b) s += std::ldexp(hb[b], -int(a + b));
    // with h <= 1: sum_{a>L} side gives 3*2^-L, sum_{b>L} side (L+3)2^-L;
    // halving the prefactored total leaves 2^-(L+1) (L+6)
    return {0.5 * s, L, std::ldexp(double(L) + 6.0, -int(L) - 1)};
}

SeriesValue g1(std::size_t L) {
    check_l(L, "g1");
    const double dl = double(L);
    const double value = -std::numbers::log2e + 0.5 * e_log_l0(L).value + a1(L).value;
    return {value, L, std::ldexp(dl * dl + 8.0 * dl + 24.0, -int(L) - 2)};
}

ExpansionPoint capacity_expansion(double alpha, std::size_t L) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("capacity_expansion: alpha must lie in [0, 1)");
    ExpansionPoint p;
    p.alpha = alpha;
    p.remainder_order = "O(alpha^(3/2-eps))";
    p.value = alpha == 0.0 ? 1.0 : 1.0 + alpha * std::log2(alpha) + g1(L).value * alpha;
    return p;
}

double hyx_asymptote(double alpha, std::size_t L) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("hyx_asymptote: alpha must lie in [0, 1)");
    return binary_entropy(alpha) + alpha * (1.0 - 0.5 * e_log_l0(L).value - a1(L).value);
}

double epsilon2_bound(double alpha, std::size_t L) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("epsilon2_bound: alpha must lie in [0, 1)");
    check_l(L, "epsilon2_bound");
    std::vector<double> hb(L + 1);
    for (std::size_t b = 1; b <= L; ++b) hb[b] = double(b + 1) * binary_entropy(1.0 / double(b + 1));
    double s = 0.0;
    for (std::size_t a = L; a >= 1; --a)
        for (std::size_t b = L; b >= 1; --b) s += std::ldexp(double(a + b) * hb[b], -int(a + b));
    // tail with h <= 1: (3L+14)2^-L from a > L plus (L^2+7L+14)2^-L from b > L
    const double dl = double(L);
    const double tail = std::ldexp(dl * dl + 10.0 * dl + 28.0, -int(L));
    return 0.5 * alpha * alpha * (s + tail);
}

double hzv_converse_bound(double alpha, double epsilon, std::size_t l_star) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("hzv_converse_bound: alpha must lie in (0, 1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("hzv_converse_bound: epsilon must be positive");
    return 0.5 * std::pow(alpha, 2.0 - epsilon) *
           (2.0 + 0.5 * std::sqrt(alpha) * double(l_star));
}

double run_tail_prob(std::size_t L) {
    check_l(L, "run_tail_prob");
    return std::ldexp(double(L) + 2.0, -int(L) - 1);
}

double flip_density_bound(std::size_t L) { return run_tail_prob(L) / double(L); }

} // namespace syncap
