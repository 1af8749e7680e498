#include "backlim/orbits.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace backlim {

bool PeriodicOrbit::contains(const Rational& x) const {
    return std::find(points.begin(), points.end(), x) != points.end();
}

std::vector<Rational> forward_orbit(const PLMap& f, const Rational& x, std::size_t n) {
    std::vector<Rational> out;
    out.reserve(n + 1);
    out.push_back(x);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f.eval(out.back()));
    return out;
}

std::optional<EventualPeriod> eventual_period(const PLMap& f, const Rational& x, std::size_t cap) {
    std::unordered_map<Rational, std::size_t> seen;
    Rational cur = x;
    for (std::size_t i = 0; i <= cap; ++i) {
        auto [it, inserted] = seen.try_emplace(cur, i);
        if (!inserted) return EventualPeriod{it->second, i - it->second};
        if (i < cap) cur = f.eval(cur);
    }
    return std::nullopt;
}

PeriodicOrbit orbit_of_periodic_point(const PLMap& f, const Rational& x, std::size_t max_period) {
    std::vector<Rational> pts{x};
    Rational cur = f.eval(x);
    while (cur != x) {
        if (pts.size() >= max_period)
            throw std::invalid_argument(x.str() + " is not periodic with period <= " + std::to_string(max_period));
        pts.push_back(cur);
        cur = f.eval(cur);
    }
    auto least = std::min_element(pts.begin(), pts.end());
    std::rotate(pts.begin(), least, pts.end());
    const std::size_t p = pts.size();
    return PeriodicOrbit{std::move(pts), p};
}

IntervalSet fixed_point_set(const PLMap& f) {
    std::vector<Interval> out;
    const Rational one(1);
    for (const auto& piece : f.pieces()) {
        if (piece.slope == one) {
            if (piece.intercept.is_zero()) out.push_back(piece.span);
            continue;
        }
        Rational x = piece.intercept / (one - piece.slope);
        if (piece.span.contains(x)) out.push_back(Interval::point(x));
    }
    return IntervalSet::from(std::move(out));
}

IntervalSet periodic_points(const PLMap& f, std::size_t n, std::size_t piece_cap) {
    if (n == 0) throw std::invalid_argument("periodic_points: n must be >= 1");
    return fixed_point_set(iterate(f, n, piece_cap));
}

PeriodicStructure periodic_orbits(const PLMap& f, std::size_t n_max, std::size_t piece_cap) {
    if (n_max == 0) throw std::invalid_argument("periodic_orbits: n_max must be >= 1");
    PeriodicStructure out;
    PLMap fn = PLMap::identity(f.domain());
    auto covered_by_continuum = [&](const Interval& iv, std::size_t n) {
        return std::any_of(out.fixed_intervals.begin(), out.fixed_intervals.end(), [&](const PeriodicContinuum& c) {
            return n % c.period == 0 && c.set.contains(IntervalSet(iv));
        });
    };
    for (std::size_t n = 1; n <= n_max; ++n) {
        fn = compose(f, fn, piece_cap);
        IntervalSet fixed = fixed_point_set(fn);
        std::vector<Interval> continua;
        for (const auto& part : fixed.parts()) {
            if (covered_by_continuum(part, n)) continue;
            if (!part.degenerate()) {
                continua.push_back(part);
                continue;
            }
            const Rational& p = part.lo();
            auto orbit = orbit_of_periodic_point(f, p, n);
            if (orbit.least_period != n || orbit.points.front() != p) continue;
            out.isolated_orbits.push_back(std::move(orbit));
        }
        if (!continua.empty()) out.fixed_intervals.push_back({n, IntervalSet::from(std::move(continua))});
    }
    return out;
}

bool sharkovsky_precedes(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) throw std::invalid_argument("sharkovsky_precedes: periods start at 1");
    auto key = [](std::size_t v) {
        std::size_t twos = 0;
        while (v % 2 == 0) {
            v /= 2;
            ++twos;
        }
        // Odd part > 1: ordered by power of two, then odd part. Powers of two
        // come last, in decreasing order.
        if (v > 1) return std::tuple<int, long long, long long>{0, static_cast<long long>(twos), static_cast<long long>(v)};
        return std::tuple<int, long long, long long>{1, -static_cast<long long>(twos), 0};
    };
    return key(m) < key(n);
}

}  // namespace backlim
