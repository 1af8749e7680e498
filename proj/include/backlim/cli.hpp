#pragma once

#include "backlim/backlimits.hpp"
#include "backlim/json_io.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace backlim {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInput = 2, kExitPrecondition = 3 };

/// Lowercase hex SHA-256 of serialize_map(f).
std::string map_digest(const PLMap& f);

struct ScanOptions {
    std::size_t dots = 4;
    long domain = 5;
    std::size_t max_period = 6;
    std::size_t limit = 500;
    std::size_t jobs = 1;
    Budget budget;
};

/// Connect-the-dots maps on [0,D] with integer dots that send integers to
/// integers and have an integer orbit of period 3, in lexicographic order of
/// (interior dot x's, dot y's). At most `limit` maps.
std::vector<PLMap> scan_family(std::size_t dots, long domain, std::size_t limit);

/// Result section of `backlim scan`. Throws std::invalid_argument when
/// dots is outside 2..6 or domain outside 1..10.
json scan_maps(const ScanOptions& opt);

/// Sorted, deduplicated (x, f(x)) rows: every dot plus `samples` interior
/// points lo + i*(hi-lo)/(samples+1). Throws std::invalid_argument if samples < 2.
std::vector<std::array<Rational, 2>> plot_rows(const PLMap& f, std::size_t samples);

/// Full command line including argv[0]. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace backlim
