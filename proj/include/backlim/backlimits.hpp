#pragma once

#include "backlim/markov.hpp"
#include "backlim/orbits.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace backlim {

/// A documented precondition of an operation does not hold (distinct from
/// malformed input).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Budget {
    std::size_t depth = 12;
    std::size_t width_cap = 10'000;
    std::size_t max_period = 6;
};

// ---------------------------------------------------------------------------
// Backward orbit trees

struct TreeNode {
    Interval value;                     // degenerate unless reached through a constant piece
    std::optional<std::size_t> parent;  // index into BackwardTree::nodes
    std::size_t piece = 0;              // piece of f carrying this node onto its parent
    bool sampled = false;               // expanded from a representative of an interval node
};

struct BackwardTree {
    Rational root;
    std::size_t depth = 0;
    std::size_t width_cap = 0;
    std::vector<TreeNode> nodes;
    std::vector<std::vector<std::size_t>> levels;
    std::vector<char> truncated;  // per level

    [[nodiscard]] bool any_truncated() const;
    [[nodiscard]] bool any_sampled() const;
    /// Point values of one level, in BFS order (interval nodes are skipped).
    [[nodiscard]] std::vector<Rational> level_points(std::size_t level) const;
};

BackwardTree backward_tree(const PLMap& f, const Rational& y, std::size_t depth, std::size_t width_cap);

// ---------------------------------------------------------------------------
// Certificates

struct ExactTailCert {
    PeriodicOrbit orbit;
    Rational connector_z;
    std::size_t connector_k = 0;
};

struct ContractionCert {
    Rational target_t;
    std::size_t period_p = 0;
    std::vector<std::size_t> piece_word;  // inverse branches, applied first to last
    Interval J;
    Rational connector_z;
    std::size_t connector_k = 0;
    Rational g_slope;      // derived, re-checked by the verifier
    Rational g_intercept;
};

/// Excluded set A = region minus the finitely many punctures. A is forward
/// invariant and avoids y, so sα(y) misses the relative interior of A.
struct AvoidanceCert {
    IntervalSet seed;
    std::size_t depth_used = 0;
    IntervalSet region;
    std::vector<Rational> punctures;
    bool stabilized = false;

    [[nodiscard]] bool excludes(const Rational& x, const Interval& domain) const;
    /// Closed complement of the relative interior of A.
    [[nodiscard]] IntervalSet upper(const Interval& domain) const;
};

struct CycleMembershipCert {
    CycleOfIntervals cycle;
    Rational hop_z;
    std::size_t hop_k = 0;
    ExceptionalReport exceptional;
};

using Certificate = std::variant<ExactTailCert, ContractionCert, AvoidanceCert, CycleMembershipCert>;
const char* certificate_kind(const Certificate& c);

struct SearchStats {
    std::size_t nodes_visited = 0;
    std::size_t words_tried = 0;
    bool budget_hit = false;
};

inline constexpr std::size_t kDefaultComponentCap = 4096;

std::optional<ExactTailCert> find_exact_tail(const PLMap& f, const Rational& y, const PeriodicOrbit& orbit,
                                             std::size_t depth, std::size_t node_budget = 10'000,
                                             SearchStats* stats = nullptr);

/// Throws PreconditionError when t is not fixed by f^p.
std::optional<ContractionCert> find_contraction(const PLMap& f, const Rational& y, const Rational& t,
                                                std::size_t p, std::size_t depth,
                                                std::size_t node_budget = 10'000, SearchStats* stats = nullptr);

struct AvoidanceResult {
    std::optional<AvoidanceCert> cert;
    std::string rejection;  // set when the seed is rejected
};

AvoidanceResult avoided_region(const PLMap& f, const Rational& y, const IntervalSet& seed, std::size_t depth,
                               std::size_t component_cap = kDefaultComponentCap);

/// Throws PreconditionError unless M is transitive with a fully decided
/// exceptional set.
std::optional<CycleMembershipCert> cycle_membership(const PLMap& f, const Rational& y, const CycleOfIntervals& m,
                                                    const MarkovSystem& ms, std::size_t depth,
                                                    std::size_t node_budget = 10'000,
                                                    SearchStats* stats = nullptr);

struct Verification {
    bool ok = false;
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// Re-derives every invariant of the certificate with exact arithmetic.
Verification verify_certificate(const PLMap& f, const Rational& y, const Certificate& cert);

// ---------------------------------------------------------------------------
// Enclosures

struct CertifiedOrbit {
    PeriodicOrbit orbit;
    Certificate cert;  // ExactTailCert or ContractionCert
};

struct SalphaEnclosure {
    Rational y;
    std::vector<CertifiedOrbit> lower_points;
    std::vector<CycleMembershipCert> lower_intervals;
    std::vector<AvoidanceCert> exclusions;
    IntervalSet upper;
    bool exact = false;
    bool beta_empty = false;  // y left the iterated images within budget
    std::size_t depth = 0;

    /// Union of every certified point and interval.
    [[nodiscard]] IntervalSet lower() const;
    /// Least periods of the certified orbits, sorted and unique.
    [[nodiscard]] std::vector<std::size_t> certified_periods() const;
};

/// Per-map data reused across many points: periodic structure, Markov
/// system, cycles of intervals and y-independent invariant seeds.
class EnclosureContext {
public:
    EnclosureContext(PLMap f, Budget budget, std::vector<CycleOfIntervals> proposed = {});

    [[nodiscard]] SalphaEnclosure enclose(const Rational& y) const;

    [[nodiscard]] const PLMap& map() const { return f_; }
    [[nodiscard]] const Budget& budget() const { return budget_; }
    [[nodiscard]] const std::vector<PeriodicOrbit>& candidate_orbits() const { return orbits_; }
    [[nodiscard]] const std::vector<CycleOfIntervals>& cycles() const { return cycles_; }

private:
    struct Transitive {
        CycleOfIntervals cycle;
        ExceptionalReport report;
    };
    struct SeedFamily {
        std::vector<IntervalSet> sets;  // invariant, largest first
    };

    PLMap f_;
    Budget budget_;
    std::optional<MarkovSystem> markov_;
    std::vector<PeriodicOrbit> orbits_;
    std::vector<CycleOfIntervals> cycles_;
    std::vector<Transitive> transitive_;
    std::vector<SeedFamily> seeds_;
};

SalphaEnclosure salpha_enclosure(const PLMap& f, const Rational& y, const Budget& budget = {},
                                 const std::vector<CycleOfIntervals>& proposed = {});
IntervalSet beta_upper(const PLMap& f, const Rational& y, const Budget& budget = {});

}  // namespace backlim
