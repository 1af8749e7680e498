#include "backlim/interval_set.hpp"

#include <algorithm>

namespace backlim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("interval with lo > hi: [" + lo_.str() + "," + hi_.str() + "]");
}

Interval Interval::parse(std::string_view text) {
    auto body = trim(text);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ParseError("malformed interval: '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("malformed interval: '" + std::string(text) + "'");
    auto lo = Rational::parse(trim(body.substr(0, comma)));
    auto hi = Rational::parse(trim(body.substr(comma + 1)));
    if (hi < lo) throw ParseError("interval with lo > hi: '" + std::string(text) + "'");
    return Interval(lo, hi);
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
    const Rational& lo = max(lo_, o.lo_);
    const Rational& hi = min(hi_, o.hi_);
    if (hi < lo) return std::nullopt;
    return Interval(lo, hi);
}

std::string Interval::str() const { return "[" + lo_.str() + "," + hi_.str() + "]"; }

IntervalSet::IntervalSet(Interval iv) { parts_.push_back(std::move(iv)); }

IntervalSet IntervalSet::from(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
        if (a.lo() != b.lo()) return a.lo() < b.lo();
        return a.hi() < b.hi();
    });
    IntervalSet out;
    for (auto& iv : parts) {
        if (!out.parts_.empty() && iv.lo() <= out.parts_.back().hi()) {
            if (out.parts_.back().hi() < iv.hi())
                out.parts_.back() = Interval(out.parts_.back().lo(), iv.hi());
        } else {
            out.parts_.push_back(std::move(iv));
        }
    }
    return out;
}

IntervalSet IntervalSet::points(std::span<const Rational> xs) {
    std::vector<Interval> parts;
    parts.reserve(xs.size());
    for (const auto& x : xs) parts.push_back(Interval::point(x));
    return from(std::move(parts));
}

IntervalSet IntervalSet::parse(std::string_view text) {
    std::vector<Interval> parts;
    auto rest = trim(text);
    while (!rest.empty()) {
        auto semi = rest.find(';');
        auto item = trim(rest.substr(0, semi));
        if (item.empty()) throw ParseError("empty interval in set: '" + std::string(text) + "'");
        parts.push_back(Interval::parse(item));
        if (semi == std::string_view::npos) break;
        rest = trim(rest.substr(semi + 1));
    }
    return from(std::move(parts));
}

std::optional<std::size_t> IntervalSet::part_of(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo(); });
    if (it == parts_.begin()) return std::nullopt;
    --it;
    if (it->contains(x)) return static_cast<std::size_t>(it - parts_.begin());
    return std::nullopt;
}

bool IntervalSet::contains(const Rational& x) const { return part_of(x).has_value(); }

bool IntervalSet::contains(const IntervalSet& other) const {
    for (const auto& iv : other.parts_) {
        auto idx = part_of(iv.lo());
        if (!idx || parts_[*idx].hi() < iv.hi()) return false;
    }
    return true;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return from(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < other.parts_.size()) {
        if (auto c = parts_[i].intersect(other.parts_[j])) out.parts_.push_back(*c);
        if (parts_[i].hi() < other.parts_[j].hi())
            ++i;
        else
            ++j;
    }
    // Disjoint non-touching inputs give disjoint non-touching outputs.
    return out;
}

IntervalSet IntervalSet::complement(const Interval& domain) const {
    if (!IntervalSet(domain).contains(*this))
        throw std::invalid_argument("complement: set " + str() + " not inside domain " + domain.str());
    std::vector<Interval> out;
    Rational cursor = domain.lo();
    for (const auto& iv : parts_) {
        if (cursor < iv.lo()) out.emplace_back(cursor, iv.lo());
        cursor = iv.hi();
    }
    if (cursor < domain.hi() || parts_.empty()) out.emplace_back(cursor, domain.hi());
    // A degenerate part strictly inside the domain leaves the complement's closure unchanged.
    return from(std::move(out));
}

bool IntervalSet::relative_interior_contains(const Rational& x, const Interval& domain) const {
    auto idx = part_of(x);
    if (!idx) return false;
    const auto& iv = parts_[*idx];
    bool left_ok = iv.lo() < x || (x == domain.lo() && iv.lo() == domain.lo());
    bool right_ok = x < iv.hi() || (x == domain.hi() && iv.hi() == domain.hi());
    if (domain.degenerate()) return true;
    return left_ok && right_ok;
}

IntervalSet IntervalSet::nondegenerate() const {
    IntervalSet out;
    for (const auto& iv : parts_)
        if (!iv.degenerate()) out.parts_.push_back(iv);
    return out;
}

Interval IntervalSet::hull() const {
    if (parts_.empty()) throw std::logic_error("hull of empty set");
    return Interval(parts_.front().lo(), parts_.back().hi());
}

std::string IntervalSet::str() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ";";
        s += parts_[i].str();
    }
    return s;
}

}  // namespace backlim
