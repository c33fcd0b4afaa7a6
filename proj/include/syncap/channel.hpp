#pragma once
// The binary random-insertion channel: after every input bit, with probability
// alpha an independent fair bit is inserted. A realization is the insertion
// pattern plus the inserted values; the derived modified/perturbed processes
// cancel rare insertion clusters so that ambiguity stays local, and
// truncate_runs is the run-capping input transform used on the converse side.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "syncap/bitword.hpp"
#include "syncap/rng.hpp"

namespace syncap {

struct ChannelParams {
    double alpha = 0.0;
    std::uint64_t seed = 0;

    ChannelParams(double alpha_, std::uint64_t seed_ = 0) : alpha(alpha_), seed(seed_) {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw std::invalid_argument("ChannelParams: alpha must lie in [0, 1)");
    }
};

// pattern bit i: an extra bit was inserted after input bit i
// inserted bit i: that bit's value (0 wherever pattern is 0)
struct InsertionRealization {
    BitWord pattern;
    BitWord inserted;

    std::size_t size() const { return pattern.size(); }
    std::uint64_t insertions() const { return pattern.popcount(); }
};

// XOR between a base realization and a derived one; v=1 implies z=1
struct ProcessDiff {
    BitWord z; // pattern changes
    BitWord v; // inserted-value changes
};

InsertionRealization sample_realization(std::size_t n, double alpha, Rng& rng);
InsertionRealization sample_realization(std::size_t n, const ChannelParams& params);

BitWord sample_uniform_word(std::size_t n, Rng& rng);

// y = x1 (b1 if a1) x2 (b2 if a2) ... xn (bn if an)
BitWord apply_channel(const BitWord& x, const InsertionRealization& r);

// per input run: run length + number of insertions whose preceding input bit
// lies in that run; sums to |y|
using SegmentLengths = std::vector<std::uint32_t>;
SegmentLengths segment_lengths(const RunDecomposition& runs, const InsertionRealization& r);

// Cancels every insertion belonging to an input run that received two or more
// insertions; the diff (z, v) records what was removed.
std::pair<InsertionRealization, ProcessDiff> modified_realization(const BitWord& x,
                                                                  const InsertionRealization& r);

// For every consecutive run pair with two or more insertions in total, the
// insertions of the left run are removed; returns the realization and the
// removal mask.
std::pair<InsertionRealization, BitWord> perturbed_realization(const BitWord& x,
                                                               const InsertionRealization& r);

// Left-to-right scan that flips any bit extending a run of the transformed
// sequence beyond l_star, so no output run exceeds l_star.
BitWord truncate_runs(const BitWord& x, std::uint32_t l_star);

// ascending positions of set bits (the insertion sites of a pattern)
std::vector<std::uint64_t> set_positions(const BitWord& w);

} // namespace syncap
