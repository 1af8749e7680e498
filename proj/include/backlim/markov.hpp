#pragma once

#include "backlim/plmap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace backlim {

/// Finite forward-invariant cut-point set with its 0/1 transition matrix.
struct MarkovSystem {
    PLMap map;
    std::vector<Rational> partition;           // sorted cut points
    std::vector<std::vector<char>> matrix;     // matrix[i][j] = 1 iff f(cell i) covers cell j
    std::vector<char> cell_expanding;          // |slope| > 1 on the cell
    bool expanding = false;                    // every non-degenerate piece has |slope| > 1

    [[nodiscard]] std::size_t cell_count() const { return partition.size() - 1; }
    [[nodiscard]] Interval cell(std::size_t i) const { return Interval(partition[i], partition[i + 1]); }
    [[nodiscard]] bool is_cut_point(const Rational& x) const;
    /// Cells whose union is exactly the given set, or nullopt when the set is
    /// not a union of cells.
    [[nodiscard]] std::optional<std::vector<std::size_t>> cells_of(const IntervalSet& s) const;
};

struct CycleOfIntervals {
    Interval base;
    std::size_t period;
    IntervalSet components;
};

struct CycleCheck {
    std::optional<CycleOfIntervals> cycle;
    std::string failure;  // names the violated clause when cycle is empty
};

struct OrbitClosure {
    IntervalSet set;
    bool stabilized;
};

enum class Verdict { Yes, No, NotApplicable };
const char* to_string(Verdict v);

struct AccessWitness {
    Rational point;    // the accessible candidate
    Rational z;        // strictly inside a cell of the cycle
    std::size_t k;     // f^k(z) = point
};

struct ExceptionalReport {
    CycleOfIntervals cycle;
    std::vector<Rational> exceptional;           // E
    std::vector<Rational> accessible_endpoints;
    std::vector<Rational> undecided;
    std::vector<AccessWitness> witnesses;        // one per candidate found outside E
};

inline constexpr std::size_t kDefaultMarkovCap = 256;
inline constexpr std::size_t kDefaultClosureCap = 128;

std::optional<MarkovSystem> markov_partition(const PLMap& f, std::size_t cap = kDefaultMarkovCap);
CycleCheck check_cycle_of_intervals(const PLMap& f, const Interval& base, std::size_t period);
OrbitClosure orbit_closure(const PLMap& f, const Interval& u, std::size_t cap = kDefaultClosureCap);

/// Throws std::invalid_argument when the cycle is not a union of cells.
Verdict is_transitive(const MarkovSystem& ms, const CycleOfIntervals& m);
Verdict is_mixing(const MarkovSystem& ms, const CycleOfIntervals& m);

/// Finite-backward-orbit test for membership in the exceptional set E of a
/// transitive cycle; candidates are component endpoints and periodic cut points.
ExceptionalReport exceptional_set(const PLMap& f, const MarkovSystem& ms, const CycleOfIntervals& m,
                                  std::size_t cap = kDefaultMarkovCap);

/// Cycles of intervals suggested by the strongly connected components of the
/// transition graph, each verified by check_cycle_of_intervals.
std::vector<CycleOfIntervals> discover_cycles(const PLMap& f, const MarkovSystem& ms);

}  // namespace backlim
