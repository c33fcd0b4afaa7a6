#include "syncap/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "syncap/channel.hpp"
#include "syncap/exact_law.hpp"
#include "syncap/guard.hpp"
#include "syncap/kernels.hpp"
#include "syncap/series.hpp"

namespace syncap {

namespace {

void check_cfg(const McConfig& cfg, const char* what) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument(std::string(what) + ": alpha must lie in [0, 1)");
    if (cfg.n == 0 || cfg.trials == 0)
        throw std::invalid_argument(std::string(what) + ": n and trials must be positive");
    const std::uint64_t load = std::uint64_t(cfg.n) * cfg.trials;
    if (load / cfg.trials != cfg.n || load > cfg.budget)
        throw GuardError(std::string(what) + ": n*trials exceeds the sample budget (" +
                         std::to_string(cfg.budget) + ")");
}

// per-trial slots filled by any scheduling, reduced by the caller in trial
// order; T is the per-trial payload
template <class T, class Body>
std::vector<T> run_trials(const McConfig& cfg, Body&& body) {
    std::vector<T> slot(cfg.trials);
    auto work = [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, t));
        slot[t] = body(t, rng);
    };
    if (cfg.workers <= 1) {
        for (std::size_t t = 0; t < cfg.trials; ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t w = std::min(cfg.workers, cfg.trials);
        pool.reserve(w);
        for (std::size_t i = 0; i < w; ++i)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < cfg.trials; t = next++) work(t);
            });
        for (auto& th : pool) th.join();
    }
    return slot;
}

Estimate reduce(const std::vector<double>& v) {
    Estimate e;
    e.samples = v.size();
    double sum = 0.0;
    for (double x : v) sum += x;
    e.mean = sum / double(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - e.mean) * (x - e.mean);
        e.std_error = std::sqrt(ss / double(v.size() - 1)) / std::sqrt(double(v.size()));
    }
    return e;
}

} // namespace

Estimate estimate_ab_entropy_rate(const McConfig& cfg) {
    check_cfg(cfg, "estimate_ab_entropy_rate");
    const auto vals = run_trials<double>(cfg, [&](std::size_t, Rng& rng) {
        const InsertionRealization r = sample_realization(cfg.n, cfg.alpha, rng);
        const auto& k = kern::active();
        const std::size_t nw = r.pattern.words().size();
        const double n = double(cfg.n);
        const double c1 = double(k.popcount(r.pattern.words().data(), nw));
        const double c11 =
            double(k.popcount_and(r.pattern.words().data(), r.inserted.words().data(), nw));
        return nplog2p((n - c1) / n) + nplog2p((c1 - c11) / n) + nplog2p(c11 / n);
    });
    return reduce(vals);
}

Estimate estimate_output_length(const McConfig& cfg) {
    check_cfg(cfg, "estimate_output_length");
    const auto vals = run_trials<double>(cfg, [&](std::size_t, Rng& rng) {
        const InsertionRealization r = sample_realization(cfg.n, cfg.alpha, rng);
        return double(r.insertions()) / double(cfg.n); // |y| - n = #insertions
    });
    return reduce(vals);
}

ZvStats estimate_zv_stats(const McConfig& cfg) {
    check_cfg(cfg, "estimate_zv_stats");
    struct Pair {
        double z1v0, z1v1;
    };
    const auto vals = run_trials<Pair>(cfg, [&](std::size_t, Rng& rng) {
        const BitWord x = sample_uniform_word(cfg.n, rng);
        const InsertionRealization r = sample_realization(cfg.n, cfg.alpha, rng);
        const ProcessDiff diff = modified_realization(x, r).second;
        const auto& k = kern::active();
        const std::size_t nw = diff.z.words().size();
        const double n = double(cfg.n);
        return Pair{
            double(k.popcount_andnot(diff.z.words().data(), diff.v.words().data(), nw)) / n,
            double(k.popcount_and(diff.z.words().data(), diff.v.words().data(), nw)) / n};
    });
    std::vector<double> a(cfg.trials), b(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        a[t] = vals[t].z1v0;
        b[t] = vals[t].z1v1;
    }
    return {reduce(a), reduce(b)};
}

Estimate estimate_boundary_ambiguity(const McConfig& cfg) {
    check_cfg(cfg, "estimate_boundary_ambiguity");
    if (cfg.alpha == 0.0) return {0.0, 0.0, 0}; // no insertions, zero samples flagged
    const auto vals = run_trials<double>(cfg, [&](std::size_t, Rng& rng) {
        const BitWord x = sample_uniform_word(cfg.n, rng);
        const InsertionRealization base = sample_realization(cfg.n, cfg.alpha, rng);
        const InsertionRealization pert = perturbed_realization(x, base).first;

        const RunDecomposition runs = decompose_runs(x);
        const std::size_t m = runs.count();
        std::vector<std::uint64_t> end(m); // exclusive end position of each run
        for (std::size_t j = 0, acc = 0; j < m; ++j) end[j] = acc += runs.lengths[j];

        // insertion sites ascend, so their run indices ascend too
        const std::vector<std::uint64_t> pos = set_positions(pert.pattern);
        std::vector<std::uint32_t> run_of(pos.size());
        for (std::size_t i = 0, j = 0; i < pos.size(); ++i) {
            while (pos[i] >= end[j]) ++j;
            run_of[i] = std::uint32_t(j);
        }

        double acc = 0.0;
        std::uint64_t pairs = 0;
        std::size_t lo = 0;
        for (std::size_t a = 1; a + 3 <= m; ++a) { // pairs of inner runs only
            const std::size_t b = a + 1;           // a >= 1 and b <= m-2
            while (lo < pos.size() && run_of[lo] < a) ++lo;
            std::size_t hi = lo;
            while (hi < pos.size() && run_of[hi] <= b) ++hi;
            ++pairs;
            if (hi - lo != 1) continue; // perturbed process leaves at most one
            const std::uint64_t p = pos[lo];
            const std::uint64_t t_a = end[a] - 1, t_b = end[b] - 1;
            if (p < t_a || p > t_b) continue;
            if (pert.inserted.get(p) != x.get(end[a])) continue; // value must match run b
            acc += binary_entropy(1.0 / double(runs.lengths[b] + 1));
        }
        return pairs ? acc / (double(pairs) * cfg.alpha) : 0.0;
    });
    return reduce(vals);
}

Estimate estimate_length_biased_log_run(const McConfig& cfg, InputMode mode) {
    check_cfg(cfg, "estimate_length_biased_log_run");
    const auto vals = run_trials<double>(cfg, [&](std::size_t, Rng& rng) {
        BitWord x;
        switch (mode) {
        case InputMode::bernoulli_half:
            x = sample_uniform_word(cfg.n, rng);
            break;
        case InputMode::all_zeros:
            x = BitWord(cfg.n);
            break;
        case InputMode::alternating:
            x = BitWord(cfg.n);
            for (std::size_t i = 1; i < cfg.n; i += 2) x.set(i, true);
            break;
        }
        const RunDecomposition runs = decompose_runs(x);
        std::vector<std::uint32_t> run_of(cfg.n);
        for (std::size_t j = 0, p = 0; j < runs.count(); ++j)
            for (std::uint32_t i = 0; i < runs.lengths[j]; ++i) run_of[p++] = std::uint32_t(j);
        double acc = 0.0;
        for (std::size_t s = 0; s < cfg.n; ++s)
            acc += std::log2(double(runs.lengths[run_of[rng.below(cfg.n)]]));
        return acc / double(cfg.n);
    });
    return reduce(vals);
}

} // namespace syncap
