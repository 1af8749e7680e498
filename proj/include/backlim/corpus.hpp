#pragma once

#include "backlim/backlimits.hpp"
#include "backlim/json_io.hpp"

#include <array>
#include <string>
#include <vector>

namespace backlim {

/// One machine-checkable claim about a corpus map.
/// kind is one of member, excluded, enclosure_exact, cycle_valid, property_check.
struct Expectation {
    std::string kind;
    std::string label;
    json params;
    json expected;
    std::string note;  // the claim in words
};

struct CorpusEntry {
    std::string name;
    PLMap map;
    std::vector<Expectation> expectations;
    std::vector<CycleOfIntervals> proposed_cycles;
    Budget budget;
    std::vector<Interval> levels;  // J_0..J_N for the nested cycle truncation, empty otherwise
};

CorpusEntry build_f5();
CorpusEntry build_f8();
CorpusEntry build_overlap();
/// Requires N >= 4.
CorpusEntry build_nomax(std::size_t N = 8);
/// Requires 2 <= N <= 8.
CorpusEntry build_chuxiong(std::size_t N = 6);

/// a_i = 2^(1-i), b_i = 3 * 2^(-i-1).
Rational nomax_a(std::size_t i);
Rational nomax_b(std::size_t i);

/// A, J_{n+1}, B, K_{n+1}, C: the five equal closed fifths of J.
std::array<Interval, 5> fifths(const Interval& J);

std::vector<std::string> corpus_names();
/// Throws std::invalid_argument for unknown names.
CorpusEntry build_entry(const std::string& name);

struct BulletCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct PropertyReport {
    std::size_t level;
    std::vector<BulletCheck> checks;
    [[nodiscard]] bool all_pass() const;
};

/// Re-checks properties (1)-(4) of the nested cycle construction at level n
/// by exact image computations. Throws PreconditionError unless n <= N-2.
PropertyReport verify_chuxiong_properties(const CorpusEntry& entry, std::size_t n);

struct ExpectationResult {
    std::string label;
    std::string kind;
    bool pass = false;
    json detail;
};

struct EntryResult {
    std::string name;
    std::vector<ExpectationResult> results;
    [[nodiscard]] bool pass() const;
};

EntryResult run_entry(const CorpusEntry& entry);
/// Entries run on a pool of `jobs` workers; results keep input order.
std::vector<EntryResult> run_entries(const std::vector<std::string>& names, std::size_t jobs);

json to_json(const Expectation& e);
json to_json(const EntryResult& r);
json expectations_json(const CorpusEntry& entry);

}  // namespace backlim
