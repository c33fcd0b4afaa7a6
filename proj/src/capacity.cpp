#include "syncap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "syncap/exact_law.hpp"

namespace syncap {

namespace {

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0, 1]");
}

// dense index over the reachable output space: lengths n..2n, within a length
// plain bit value; total size 2^(2n+1) - 2^n
std::size_t dense_size(std::size_t n) { return (std::size_t(1) << (2 * n + 1)) - (std::size_t(1) << n); }

std::size_t dense_index(std::uint64_t ykey, std::size_t n) {
    const std::uint64_t len = ykey >> 40;
    const std::uint64_t bits = ykey & ((std::uint64_t(1) << 40) - 1);
    return std::size_t(((std::uint64_t(1) << len) - (std::uint64_t(1) << n)) + bits);
}

} // namespace

InputLaw InputLaw::iid(std::size_t n, double p1) {
    if (n == 0) throw std::invalid_argument("InputLaw: n must be positive");
    check_prob(p1, "InputLaw: p1");
    InputLaw law;
    law.kind = Kind::iid;
    law.n = n;
    law.p1 = p1;
    return law;
}

InputLaw InputLaw::markov(std::size_t n, double p01, double p10) {
    if (n == 0) throw std::invalid_argument("InputLaw: n must be positive");
    check_prob(p01, "InputLaw: p01");
    check_prob(p10, "InputLaw: p10");
    InputLaw law;
    law.kind = Kind::markov;
    law.n = n;
    law.p01 = p01;
    law.p10 = p10;
    return law;
}

InputLaw InputLaw::explicit_table(std::size_t n, std::vector<double> probs) {
    if (n == 0 || n >= 8 * sizeof(std::size_t))
        throw std::invalid_argument("InputLaw: bad blocklength");
    if (probs.size() != (std::size_t(1) << n))
        throw std::invalid_argument("InputLaw: table size must be 2^n");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("InputLaw: negative table entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("InputLaw: table does not sum to 1");
    InputLaw law;
    law.kind = Kind::explicit_table;
    law.n = n;
    law.table = std::move(probs);
    return law;
}

std::vector<double> InputLaw::materialize() const {
    const std::size_t size = std::size_t(1) << n;
    std::vector<double> px(size);
    switch (kind) {
    case Kind::iid:
        for (std::size_t m = 0; m < size; ++m) {
            double p = 1.0;
            for (std::size_t i = 0; i < n; ++i) p *= ((m >> i) & 1) ? p1 : 1.0 - p1;
            px[m] = p;
        }
        break;
    case Kind::markov: {
        // stationary start; a frozen chain (p01 + p10 = 0) starts uniform
        const double denom = p01 + p10;
        const double pi1 = denom > 0.0 ? p01 / denom : 0.5;
        const double t[2][2] = {{1.0 - p01, p01}, {p10, 1.0 - p10}};
        for (std::size_t m = 0; m < size; ++m) {
            unsigned prev = m & 1;
            double p = prev ? pi1 : 1.0 - pi1;
            for (std::size_t i = 1; i < n; ++i) {
                const unsigned cur = (m >> i) & 1;
                p *= t[prev][cur];
                prev = cur;
            }
            px[m] = p;
        }
        break;
    }
    case Kind::explicit_table:
        px = table;
        break;
    }
    return px;
}

MIResult mutual_information(const InputLaw& law, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("mutual_information: alpha must lie in [0, 1)");
    const std::size_t n = law.n;
    check_guard(n, kCapacityGuard, "mutual_information");
    if (n > 12)
        throw std::invalid_argument("mutual_information: joint enumeration supports n <= 12");

    const std::vector<double> px = law.materialize();
    std::vector<double> py(dense_size(n), 0.0);

    double h_x = 0.0, h_y_given_x = 0.0, h_xy = 0.0, h_xyk = 0.0;
    for (double p : px) h_x += nplog2p(p);

    struct Atom {
        std::uint64_t ykey, kkey;
        double w;
    };
    std::vector<Atom> atoms;
    std::vector<std::uint32_t> run_of_pos(n);
    std::vector<std::uint32_t> cnt;

    for (std::size_t m = 0; m < px.size(); ++m) {
        if (px[m] <= 0.0) continue;
        const BitWord xw = BitWord::from_packed(m, n);
        const RunDecomposition runs = decompose_runs(xw);
        for (std::size_t j = 0, pos = 0; j < runs.count(); ++j)
            for (std::uint32_t k = 0; k < runs.lengths[j]; ++k) run_of_pos[pos++] = std::uint32_t(j);

        atoms.clear();
        cnt.assign(runs.count(), 0);
        for_each_insertion_class(xw, alpha, [&](const std::vector<int>& digit, std::uint64_t ykey, double w) {
            if (w <= 0.0) return;
            std::fill(cnt.begin(), cnt.end(), 0u);
            for (std::size_t i = 0; i < n; ++i)
                if (digit[i]) ++cnt[run_of_pos[i]];
            std::uint64_t kkey = 0;
            for (std::size_t j = 0; j < runs.count(); ++j)
                kkey |= std::uint64_t(runs.lengths[j] + cnt[j]) << (5 * j);
            atoms.push_back({ykey, kkey, w});
        });
        std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
            return a.ykey != b.ykey ? a.ykey < b.ykey : a.kkey < b.kkey;
        });

        double hyx_local = 0.0, hxy_local = 0.0, hxyk_local = 0.0;
        for (std::size_t i = 0; i < atoms.size();) {
            double py_x = 0.0;
            std::size_t j = i;
            while (j < atoms.size() && atoms[j].ykey == atoms[i].ykey) {
                double q = 0.0;
                std::size_t k = j;
                while (k < atoms.size() && atoms[k].ykey == atoms[j].ykey &&
                       atoms[k].kkey == atoms[j].kkey)
                    q += atoms[k++].w;
                hxyk_local += nplog2p(px[m] * q);
                py_x += q;
                j = k;
            }
            hyx_local += nplog2p(py_x);
            hxy_local += nplog2p(px[m] * py_x);
            py[dense_index(atoms[i].ykey, n)] += px[m] * py_x;
            i = j;
        }
        h_y_given_x += px[m] * hyx_local;
        h_xy += hxy_local;
        h_xyk += hxyk_local;
    }

    double h_y = 0.0;
    for (double p : py) h_y += nplog2p(p);

    MIResult r;
    r.n = n;
    r.alpha = alpha;
    r.h_y = h_y;
    r.h_y_given_x = h_y_given_x;
    // (A, B) atoms are iid across positions with PMF (1-alpha, alpha/2, alpha/2)
    r.h_ab = double(n) * (nplog2p(1.0 - alpha) + 2.0 * nplog2p(alpha / 2.0));
    r.h_ab_given_xyk = h_x + r.h_ab - h_xyk; // (Y, K) is a function of (X, A, B)
    r.h_k_given_xy = h_xyk - h_xy;
    r.mutual_information = h_y - h_y_given_x;
    return r;
}

BaTrace blahut_arimoto(std::size_t n, double alpha, double tol, std::size_t max_iter) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("blahut_arimoto: alpha must lie in [0, 1)");
    if (!(tol > 0.0)) throw std::invalid_argument("blahut_arimoto: tol must be positive");
    if (max_iter == 0) throw std::invalid_argument("blahut_arimoto: max_iter must be positive");
    check_guard(n, kCapacityGuard, "blahut_arimoto");

    const std::size_t nx = std::size_t(1) << n;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(nx);
    for (std::size_t m = 0; m < nx; ++m) {
        const OutputDistribution dist = output_distribution(BitWord::from_packed(m, n), alpha);
        auto& row = rows[m];
        row.reserve(dist.entries.size());
        for (const auto& [y, p] : dist.entries) {
            const std::uint64_t ykey = (std::uint64_t(y.size()) << 40) | y.words()[0];
            row.emplace_back(std::uint32_t(dense_index(ykey, n)), p);
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    BaTrace trace;
    trace.n = n;
    trace.alpha = alpha;
    trace.tol = tol;
    trace.certified_upper = 1.0; // C_n <= 1 bit/symbol unconditionally

    std::vector<double> r(nx, 1.0 / double(nx));
    std::vector<double> q(dense_size(n));
    std::vector<double> d(nx);

    for (std::size_t it = 1; it <= max_iter; ++it) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t m = 0; m < nx; ++m) {
            if (r[m] <= 0.0) continue;
            for (const auto& [idx, w] : rows[m]) q[idx] += r[m] * w;
        }
        double value = 0.0, max_d = -inf;
        for (std::size_t m = 0; m < nx; ++m) {
            double dm = 0.0;
            for (const auto& [idx, w] : rows[m]) {
                if (q[idx] <= 0.0) { // unreachable under current law; bound is vacuous
                    dm = inf;
                    break;
                }
                dm += w * std::log2(w / q[idx]);
            }
            d[m] = dm;
            value += r[m] > 0.0 ? r[m] * dm : 0.0;
            max_d = std::max(max_d, dm);
        }
        trace.values.push_back(value / double(n));
        trace.certified_upper = std::min(trace.certified_upper, max_d / double(n));
        trace.cn = value / double(n);
        trace.gap = max_d - value;
        trace.iterations = it;
        if (trace.gap <= tol) {
            trace.converged = true;
            break;
        }
        if (it == max_iter) break;
        double z = 0.0;
        for (std::size_t m = 0; m < nx; ++m) {
            r[m] = r[m] > 0.0 ? r[m] * std::exp2(d[m]) : 0.0;
            z += r[m];
        }
        for (double& rm : r) rm /= z;
    }
    trace.input_law = std::move(r);
    return trace;
}

std::vector<UpperBoundPoint> upper_bound_sequence(double alpha, std::size_t n_max, double tol,
                                                  std::size_t max_iter) {
    if (n_max == 0) throw std::invalid_argument("upper_bound_sequence: n_max must be positive");
    std::vector<UpperBoundPoint> out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= n_max; ++n) {
        const BaTrace t = blahut_arimoto(n, alpha, tol, max_iter);
        best = std::min(best, t.certified_upper);
        out.push_back({n, t.cn, t.certified_upper, t.converged, best});
    }
    return out;
}

} // namespace syncap
