#pragma once
// Seeded statistical validation of the entropy-term lemmas at blocklengths far
// beyond exact enumeration: the (A,B) entropy rate h(alpha)+alpha, the
// modified-process (z,v) frequency bounds, the boundary-ambiguity constant A1,
// the length-biased run-length moment E[log2 L0], and output-length statistics.
// Trials are independently seeded from a root seed and reduced in trial order,
// so results are bit-identical for any worker count.

#include <cstdint>
#include <utility>

namespace syncap {

struct McConfig {
    double alpha = 0.0;
    std::size_t n = 0;          // blocklength per trial
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1'000'000'000; // cap on n*trials, guards runaway runs
    std::size_t workers = 0;    // 0 or 1 = serial; >1 = worker pool
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;   // sample stddev of per-trial values / sqrt(samples)
    std::uint64_t samples = 0; // independent per-trial values entering the mean
};

// plug-in entropy of the empirical (A_i, B_i) three-atom PMF, bits/symbol;
// target h(alpha) + alpha
Estimate estimate_ab_entropy_rate(const McConfig& cfg);

// mean of (|y| - n)/n; target alpha. var(|y|) is recoverable as
// n^2 * std_error^2 * samples (per-trial |y| is one binomial draw).
Estimate estimate_output_length(const McConfig& cfg);

struct ZvStats {
    Estimate z1v0; // per-position frequency of (z=1, v=0)
    Estimate z1v1; // per-position frequency of (z=1, v=1)
};

// frequencies of the modified-process removal atoms under iid Ber(1/2) input;
// both are bounded by alpha^2 E[L0] = 3 alpha^2 to leading order
ZvStats estimate_zv_stats(const McConfig& cfg);

// Accumulates h(1/(r_{j+1}+1)) over non-edge run pairs of an iid Ber(1/2)
// input whose perturbed realization puts exactly one insertion in the pair,
// with the inserted value matching run j+1 and the position between the last
// bits of the two runs (the indistinguishable configuration). Normalized by
// (#pairs considered * alpha); target A1 ~= 1.2885. alpha = 0 returns a
// zero-sample estimate.
Estimate estimate_boundary_ambiguity(const McConfig& cfg);

enum class InputMode { bernoulli_half, all_zeros, alternating };

// log2 of the run length containing a uniform position, n positions per
// trial; target E[log2 L0] ~= 1.2886 for iid Ber(1/2), log2(n) for all-zeros,
// 0 for alternating input
Estimate estimate_length_biased_log_run(const McConfig& cfg,
                                        InputMode mode = InputMode::bernoulli_half);

} // namespace syncap
