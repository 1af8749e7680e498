#pragma once

#include "backlim/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace backlim {

/// Closed interval [lo, hi] with lo <= hi. A degenerate interval is a point.
class Interval {
public:
    Interval(Rational lo, Rational hi);
    static Interval point(const Rational& x) { return Interval(x, x); }
    /// Parses "[lo,hi]".
    static Interval parse(std::string_view text);

    [[nodiscard]] const Rational& lo() const { return lo_; }
    [[nodiscard]] const Rational& hi() const { return hi_; }
    [[nodiscard]] Rational length() const { return hi_ - lo_; }
    [[nodiscard]] Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
    [[nodiscard]] bool degenerate() const { return lo_ == hi_; }
    [[nodiscard]] bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    [[nodiscard]] bool strictly_contains(const Rational& x) const { return lo_ < x && x < hi_; }
    [[nodiscard]] std::optional<Interval> intersect(const Interval& o) const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    Rational lo_;
    Rational hi_;
};

/// Finite union of closed intervals in canonical form: parts sorted, pairwise
/// disjoint and non-touching. Equal point sets have equal representations.
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(Interval iv);  // NOLINT(google-explicit-constructor)
    /// Canonicalizes an arbitrary list of intervals.
    static IntervalSet from(std::vector<Interval> parts);
    static IntervalSet points(std::span<const Rational> xs);
    /// Parses "[a,b];[c,d];..." (empty string gives the empty set).
    static IntervalSet parse(std::string_view text);

    [[nodiscard]] const std::vector<Interval>& parts() const { return parts_; }
    [[nodiscard]] bool empty() const { return parts_.empty(); }
    [[nodiscard]] std::size_t size() const { return parts_.size(); }

    [[nodiscard]] bool contains(const Rational& x) const;
    [[nodiscard]] bool contains(const IntervalSet& other) const;
    /// Index of the part containing x, if any.
    [[nodiscard]] std::optional<std::size_t> part_of(const Rational& x) const;

    [[nodiscard]] IntervalSet unite(const IntervalSet& other) const;
    [[nodiscard]] IntervalSet intersect(const IntervalSet& other) const;
    /// Closure of domain minus this set. Throws if this set is not inside domain.
    [[nodiscard]] IntervalSet complement(const Interval& domain) const;
    /// True when x is interior to this set relative to the ambient domain.
    [[nodiscard]] bool relative_interior_contains(const Rational& x, const Interval& domain) const;
    /// Drops degenerate parts.
    [[nodiscard]] IntervalSet nondegenerate() const;
    /// Smallest interval containing the set. Requires non-empty.
    [[nodiscard]] Interval hull() const;

    [[nodiscard]] std::string str() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> parts_;
};

inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) { return a.unite(b); }
inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) { return a.intersect(b); }
inline IntervalSet complement(const IntervalSet& a, const Interval& domain) { return a.complement(domain); }
inline bool relative_interior_contains(const IntervalSet& a, const Rational& x, const Interval& domain) {
    return a.relative_interior_contains(x, domain);
}

}  // namespace backlim
