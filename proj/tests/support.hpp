#pragma once
// Brute-force oracles shared by the unit tests and the acceptance suite.
// Everything here is written independently of the library's enumeration
// helpers: classes are walked with a plain base-3 odometer and outputs are
// built as strings.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace testsupport {

// all 3^n insertion classes of x (given as a 0/1 string), accumulated into
// P(y | x) keyed by the output string
inline std::map<std::string, double> brute_output_law(const std::string& x, double alpha) {
    const std::size_t n = x.size();
    std::map<std::string, double> law;
    std::vector<int> d(n, 0);
    for (;;) {
        double w = 1.0;
        std::string y;
        for (std::size_t i = 0; i < n; ++i) {
            y += x[i];
            if (d[i] == 0) {
                w *= 1.0 - alpha;
            } else {
                y += char('0' + (d[i] - 1));
                w *= alpha / 2.0;
            }
        }
        law[y] += w;
        std::size_t i = n;
        while (i > 0 && d[i - 1] == 2) d[--i] = 0;
        if (i == 0) break;
        ++d[i - 1];
    }
    return law;
}

// joint brute MI for an explicit input table (index bit i = x_i):
// I = H(Y) - H(Y|X) with everything enumerated as strings
inline double brute_mi(std::size_t n, const std::vector<double>& px, double alpha) {
    std::map<std::string, double> py;
    double h_y_given_x = 0.0;
    for (std::size_t m = 0; m < px.size(); ++m) {
        if (px[m] <= 0.0) continue;
        std::string xs(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if ((m >> i) & 1) xs[i] = '1';
        double hx_local = 0.0;
        for (const auto& [y, w] : brute_output_law(xs, alpha)) {
            py[y] += px[m] * w;
            if (w > 0.0) hx_local -= w * std::log2(w);
        }
        h_y_given_x += px[m] * hx_local;
    }
    double h_y = 0.0;
    for (const auto& [y, w] : py)
        if (w > 0.0) h_y -= w * std::log2(w);
    return h_y - h_y_given_x;
}

inline std::vector<double> uniform_table(std::size_t n) {
    return std::vector<double>(std::size_t(1) << n, 1.0 / double(std::size_t(1) << n));
}

} // namespace testsupport
