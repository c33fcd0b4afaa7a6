#pragma once
// Series and closed-form constants of the small-alpha capacity expansion
//   C(alpha) = 1 + alpha*log2(alpha) + G1*alpha + O(alpha^(3/2-eps)),
// every truncated series carrying an explicit tail bound. G1 splits as
// -log2(e) + (1/2)E[log2 L0] + A1 with L0 the length-biased run length of an
// iid Ber(1/2) word (P(L0=l) = l*2^(-l-1)) and A1 the boundary-ambiguity
// constant of the segment-length entropy.

#include <cstddef>
#include <string>

namespace syncap {

struct SeriesValue {
    double value = 0.0;
    std::size_t L = 0;        // truncation level
    double tail_bound = 0.0;  // rigorous bound on the discarded tail
};

struct ExpansionPoint {
    double alpha = 0.0;
    double value = 0.0; // bits/symbol
    std::string remainder_order; // uncontrolled remainder, recorded not bounded
};

// -p log2 p - (1-p) log2 (1-p), 0 log 0 := 0
double binary_entropy(double p);

// sum_{l<=L} 2^(-l-1) l log2 l  ->  E[log2 L0] ~= 1.2886
SeriesValue e_log_l0(std::size_t L);

// (1/2) sum_{a,b<=L} (b+1) 2^(-a-b) h(1/(b+1))  ->  A1 ~= 1.2885
SeriesValue a1(std::size_t L);

// G~_L = -log2(e) + e_log_l0(L)/2 + a1(L)  ->  G1 ~= 0.4901,
// tail R_L = 2^(-L-2)(L^2 + 8L + 24)
SeriesValue g1(std::size_t L);

// 1 + alpha log2 alpha + g1(L) * alpha; exactly 1 at alpha = 0
ExpansionPoint capacity_expansion(double alpha, std::size_t L = 1000);

// per-symbol H(Y|X) asymptote: h(alpha) + alpha*(1 - e_log_l0(L)/2 - a1(L))
double hyx_asymptote(double alpha, std::size_t L = 1000);

// upper bound on the pair-correction term:
// (alpha^2/2) sum_{a,b<=L} (a+b)(b+1) 2^(-a-b) h(1/(b+1)), tail added in
double epsilon2_bound(double alpha, std::size_t L = 200);

// converse-side entropy budget 0.5 alpha^(2-eps) (2 + 0.5 sqrt(alpha) l_star)
double hzv_converse_bound(double alpha, double epsilon, std::size_t l_star);

// P(L0 > L) = 2^(-L-1)(L+2), exact
double run_tail_prob(std::size_t L);

// flip-density budget of the run-truncation transform: P(L0 > L)/L
double flip_density_bound(std::size_t L);

} // namespace syncap
