#pragma once
// Exact finite-blocklength information quantities for the insertion channel:
// mutual information with its run/segment entropy decomposition, and
// Blahut-Arimoto maximization giving the C_n upper-bound sequence
// (C = inf_n C_n, so every C_n certificate bounds the capacity).

#include <cstddef>
#include <vector>

#include "syncap/bitword.hpp"
#include "syncap/guard.hpp"

namespace syncap {

// default cap on blocklength for the 3^n * 2^n joint enumerations;
// overridable through SYNCAP_GUARD_N
inline constexpr std::size_t kCapacityGuard = 8;

struct InputLaw {
    enum class Kind { iid, markov, explicit_table };
    Kind kind = Kind::iid;
    std::size_t n = 1;
    double p1 = 0.5;            // iid: P(x_i = 1)
    double p01 = 0.0, p10 = 0.0; // markov transition probabilities, stationary start
    std::vector<double> table;  // explicit: indexed by packed word, bit i = x_i

    static InputLaw iid(std::size_t n, double p1 = 0.5);
    static InputLaw markov(std::size_t n, double p01, double p10);
    static InputLaw explicit_table(std::size_t n, std::vector<double> probs);

    // probability table over {0,1}^n, index bit i = x_i
    std::vector<double> materialize() const;
};

struct MIResult {
    std::size_t n = 0;
    double alpha = 0.0;
    // all entropies in bits, totals over the block
    double h_y = 0.0;
    double h_y_given_x = 0.0;
    double h_ab = 0.0;
    double h_ab_given_xyk = 0.0;
    double h_k_given_xy = 0.0;
    double mutual_information = 0.0;
};

// Joint enumeration over (x, a, b); y and the per-run segment lengths K are
// their deterministic images, so both decompositions
//   I = H(Y) - H(Y|X)
//   I = H(Y) - H(A,B) + H(A,B|X,Y,K) + H(K|X,Y)
// hold to rounding.
MIResult mutual_information(const InputLaw& law, double alpha);

struct BaTrace {
    std::size_t n = 0;
    double alpha = 0.0;
    double tol = 0.0;
    std::vector<double> values;    // per-iteration I(r_t)/n, non-decreasing
    double cn = 0.0;               // final value, bits/symbol (a lower estimate of C_n)
    double certified_upper = 0.0;  // min over iterations of max_x D_t(x)/n; >= C_n always
    double gap = 0.0;              // final max_x D - I, total bits
    std::vector<double> input_law; // final r over {0,1}^n
    std::size_t iterations = 0;
    bool converged = false;        // gap <= tol reached within max_iter
};

BaTrace blahut_arimoto(std::size_t n, double alpha, double tol = 1e-6,
                       std::size_t max_iter = 2000);

struct UpperBoundPoint {
    std::size_t n = 0;
    double cn = 0.0;               // BA value at termination
    double upper = 0.0;            // certified upper bound on C_n (hence on C)
    bool converged = false;
    double running_min_upper = 0.0; // best certified bound over n' <= n
};

std::vector<UpperBoundPoint> upper_bound_sequence(double alpha, std::size_t n_max,
                                                  double tol = 1e-6,
                                                  std::size_t max_iter = 2000);

} // namespace syncap
