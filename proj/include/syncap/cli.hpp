#pragma once
// Command-line surface: series / law / mi / ba / mc / sweep / replay.
// Every command supports --seed, --json, --out (JSON-lines run records) and
// --config (flat key=value defaults, command line wins). Exit codes:
// 0 success, 1 usage error, 2 numerical non-convergence or replay mismatch,
// 3 guard violation.

#include <iosfwd>

namespace syncap {

inline constexpr const char* kVersion = "0.1.0";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace syncap
