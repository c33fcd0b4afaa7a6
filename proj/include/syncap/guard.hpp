#pragma once
// Blocklength guards for the exponential-cost exact paths. SYNCAP_GUARD_N in
// the environment overrides every default (expert use only; costs grow like
// 3^n or 6^n past the defaults).

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace syncap {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::size_t guard_n(std::size_t fallback) {
    if (const char* s = std::getenv("SYNCAP_GUARD_N")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

inline void check_guard(std::size_t n, std::size_t fallback, const char* what) {
    const std::size_t g = guard_n(fallback);
    if (n > g)
        throw GuardError(std::string(what) + ": blocklength " + std::to_string(n) +
                         " exceeds guard " + std::to_string(g) +
                         " (override with SYNCAP_GUARD_N)");
}

} // namespace syncap
