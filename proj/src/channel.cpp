#include "syncap/channel.hpp"

#include <bit>

namespace syncap {

InsertionRealization sample_realization(std::size_t n, double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("sample_realization: alpha must lie in [0, 1)");
    InsertionRealization r{BitWord(n), BitWord(n)};
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(alpha)) {
            r.pattern.set(i, true);
            if (rng.bit()) r.inserted.set(i, true); // value drawn only where inserted
        }
    }
    return r;
}

InsertionRealization sample_realization(std::size_t n, const ChannelParams& params) {
    Rng rng(params.seed);
    return sample_realization(n, params.alpha, rng);
}

BitWord sample_uniform_word(std::size_t n, Rng& rng) {
    BitWord x(n);
    auto& w = x.words();
    for (auto& word : w) word = rng.u64();
    x.mask_tail();
    return x;
}

BitWord apply_channel(const BitWord& x, const InsertionRealization& r) {
    if (r.size() != x.size()) throw std::invalid_argument("apply_channel: realization/input length mismatch");
    BitWord y;
    y.reserve(x.size() + x.size() / 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        y.push_back(x.get(i));
        if (r.pattern.get(i)) y.push_back(r.inserted.get(i));
    }
    return y;
}

std::vector<std::uint64_t> set_positions(const BitWord& w) {
    std::vector<std::uint64_t> pos;
    pos.reserve(64);
    const auto& words = w.words();
    for (std::size_t k = 0; k < words.size(); ++k) {
        std::uint64_t m = words[k];
        while (m) {
            pos.push_back(64 * k + std::countr_zero(m));
            m &= m - 1;
        }
    }
    return pos;
}

SegmentLengths segment_lengths(const RunDecomposition& runs, const InsertionRealization& r) {
    if (runs.total() != r.size())
        throw std::invalid_argument("segment_lengths: run decomposition does not match realization length");
    SegmentLengths k(runs.lengths.begin(), runs.lengths.end());
    std::size_t j = 0;
    std::uint64_t end = k.empty() ? 0 : runs.lengths[0];
    for (std::uint64_t p : set_positions(r.pattern)) {
        while (p >= end) end += runs.lengths[++j];
        ++k[j];
    }
    return k;
}

namespace {

struct RunGroup {
    std::size_t run;
    std::size_t first, last; // index range into the position vector, inclusive
};

// insertion positions grouped by the input run containing them
std::vector<RunGroup> group_by_run(const RunDecomposition& runs, const std::vector<std::uint64_t>& pos) {
    std::vector<RunGroup> gs;
    std::size_t j = 0;
    std::uint64_t end = runs.lengths.empty() ? 0 : runs.lengths[0];
    for (std::size_t i = 0; i < pos.size(); ++i) {
        while (pos[i] >= end) end += runs.lengths[++j];
        if (!gs.empty() && gs.back().run == j) gs.back().last = i;
        else gs.push_back({j, i, i});
    }
    return gs;
}

} // namespace

std::pair<InsertionRealization, ProcessDiff> modified_realization(const BitWord& x,
                                                                  const InsertionRealization& r) {
    if (r.size() != x.size()) throw std::invalid_argument("modified_realization: length mismatch");
    InsertionRealization mod = r;
    ProcessDiff diff{BitWord(x.size()), BitWord(x.size())};
    const auto runs = decompose_runs(x);
    const auto pos = set_positions(r.pattern);
    for (const auto& g : group_by_run(runs, pos)) {
        if (g.last == g.first) continue; // a single insertion in this run stays
        for (std::size_t i = g.first; i <= g.last; ++i) {
            const std::uint64_t p = pos[i];
            mod.pattern.set(p, false);
            diff.z.set(p, true);
            if (r.inserted.get(p)) {
                mod.inserted.set(p, false);
                diff.v.set(p, true);
            }
        }
    }
    return {std::move(mod), std::move(diff)};
}

std::pair<InsertionRealization, BitWord> perturbed_realization(const BitWord& x,
                                                               const InsertionRealization& r) {
    if (r.size() != x.size()) throw std::invalid_argument("perturbed_realization: length mismatch");
    InsertionRealization out = r;
    BitWord zcheck(x.size());
    const auto runs = decompose_runs(x);
    const auto pos = set_positions(r.pattern);
    const auto gs = group_by_run(runs, pos);
    const std::size_t last_run = runs.count() ? runs.count() - 1 : 0;
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
        const auto& g = gs[gi];
        if (g.run == last_run) continue; // no pair has this run on the left
        std::size_t total = g.last - g.first + 1;
        if (gi + 1 < gs.size() && gs[gi + 1].run == g.run + 1)
            total += gs[gi + 1].last - gs[gi + 1].first + 1;
        if (total < 2) continue;
        for (std::size_t i = g.first; i <= g.last; ++i) {
            const std::uint64_t p = pos[i];
            out.pattern.set(p, false);
            out.inserted.set(p, false);
            zcheck.set(p, true);
        }
    }
    return {std::move(out), std::move(zcheck)};
}

BitWord truncate_runs(const BitWord& x, std::uint32_t l_star) {
    if (l_star == 0) throw std::invalid_argument("truncate_runs: l_star must be >= 1");
    BitWord out;
    out.reserve(x.size());
    bool prev = false;
    std::uint32_t len = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        bool b = x.get(i);
        if (i && b == prev && len == l_star) b = !b; // would become the (l_star+1)-th
        if (i && b == prev) {
            ++len;
        } else {
            prev = b;
            len = 1;
        }
        out.push_back(b);
    }
    return out;
}

} // namespace syncap
