#include "backlim/backlimits.hpp"
#include "internal/search.hpp"

#include <algorithm>
#include <set>

namespace backlim {

IntervalSet SalphaEnclosure::lower() const {
    std::vector<Rational> pts;
    for (const auto& c : lower_points) pts.insert(pts.end(), c.orbit.points.begin(), c.orbit.points.end());
    IntervalSet out = IntervalSet::points(pts);
    for (const auto& m : lower_intervals) out = out.unite(m.cycle.components);
    return out;
}

std::vector<std::size_t> SalphaEnclosure::certified_periods() const {
    std::set<std::size_t> ps;
    for (const auto& c : lower_points) ps.insert(c.orbit.least_period);
    return {ps.begin(), ps.end()};
}

namespace {

constexpr std::size_t kRadiusSteps = 16;

PeriodicStructure periodic_within_budget(const PLMap& f, std::size_t max_period) {
    // Fewer periods is still sound; it only weakens the enclosure.
    for (std::size_t n = max_period; n >= 1; --n) {
        try {
            return periodic_orbits(f, n);
        } catch (const PieceBudgetExceeded&) {
        }
    }
    return {};
}

IntervalSet ball(const IntervalSet& core, const Rational& r, const Interval& domain) {
    std::vector<Interval> parts;
    for (const auto& iv : core.parts())
        parts.emplace_back(max(domain.lo(), iv.lo() - r), min(domain.hi(), iv.hi() + r));
    return IntervalSet::from(std::move(parts));
}

}  // namespace

EnclosureContext::EnclosureContext(PLMap f, Budget budget, std::vector<CycleOfIntervals> proposed)
    : f_(std::move(f)), budget_(budget) {
    auto structure = periodic_within_budget(f_, budget_.max_period);

    std::set<std::vector<Rational>> seen;
    auto add_orbit = [&](PeriodicOrbit o) {
        if (seen.insert(o.points).second) orbits_.push_back(std::move(o));
    };
    for (auto& o : structure.isolated_orbits) add_orbit(o);
    for (const auto& c : structure.fixed_intervals)
        for (const auto& part : c.set.parts()) {
            add_orbit(orbit_of_periodic_point(f_, part.lo(), c.period));
            add_orbit(orbit_of_periodic_point(f_, part.hi(), c.period));
        }
    std::stable_sort(orbits_.begin(), orbits_.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
        return std::tie(a.least_period, a.points) < std::tie(b.least_period, b.points);
    });

    markov_ = markov_partition(f_);
    std::vector<CycleOfIntervals> found;
    if (markov_) found = discover_cycles(f_, *markov_);
    for (const auto& m : proposed) {
        auto check = check_cycle_of_intervals(f_, m.base, m.period);
        if (check.cycle) found.push_back(std::move(*check.cycle));
    }
    for (auto& m : found) {
        bool dup = std::any_of(cycles_.begin(), cycles_.end(),
                               [&](const CycleOfIntervals& c) { return c.components == m.components; });
        if (!dup) cycles_.push_back(std::move(m));
    }

    if (markov_) {
        for (const auto& m : cycles_) {
            Verdict v = Verdict::No;
            try {
                v = is_transitive(*markov_, m);
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (v != Verdict::Yes) continue;
            auto report = exceptional_set(f_, *markov_, m);
            if (report.undecided.empty()) transitive_.push_back({m, std::move(report)});
        }
    }

    const Interval& dom = f_.domain();
    auto invariant = [&](const IntervalSet& s) { return s.contains(f_.image(s)); };
    auto grow = [&](const IntervalSet& core, bool with_core) {
        SeedFamily fam;
        Rational r(1, 2);
        for (std::size_t k = 1; k <= kRadiusSteps; ++k, r = r / Rational(2)) {
            IntervalSet b = ball(core, r, dom);
            if (invariant(b)) fam.sets.push_back(std::move(b));
        }
        if (with_core && invariant(core)) fam.sets.push_back(core);
        if (!fam.sets.empty()) seeds_.push_back(std::move(fam));
    };
    for (const auto& m : cycles_) seeds_.push_back({{m.components}});
    for (const auto& o : orbits_) grow(IntervalSet::points(o.points), false);
    for (const auto& c : structure.fixed_intervals) grow(c.set, true);
}

SalphaEnclosure EnclosureContext::enclose(const Rational& y) const {
    const Interval& dom = f_.domain();
    if (!dom.contains(y)) throw std::invalid_argument("point outside domain");
    SalphaEnclosure out;
    out.y = y;
    out.depth = budget_.depth;

    IntervalSet images(dom);
    for (std::size_t j = 1; j <= budget_.depth; ++j) {
        images = f_.image(images);
        if (!images.contains(y)) {
            out.beta_empty = true;
            out.exact = true;
            return out;
        }
    }

    out.upper = IntervalSet(dom);
    std::vector<IntervalSet> used;
    for (const auto& fam : seeds_) {
        auto it = std::find_if(fam.sets.begin(), fam.sets.end(), [&](const IntervalSet& s) { return !s.contains(y); });
        if (it == fam.sets.end() || std::find(used.begin(), used.end(), *it) != used.end()) continue;
        used.push_back(*it);
        auto res = avoided_region(f_, y, *it, budget_.depth);
        if (!res.cert) continue;
        out.upper = out.upper.intersect(res.cert->upper(dom));
        out.exclusions.push_back(std::move(*res.cert));
    }
    // Invariant sets stay invariant under union; the union also removes
    // points that only sit on the boundary of each seed.
    if (used.size() > 1) {
        IntervalSet joint;
        for (const auto& s : used) joint = joint.unite(s);
        auto res = avoided_region(f_, y, joint, budget_.depth);
        if (res.cert) {
            out.upper = out.upper.intersect(res.cert->upper(dom));
            out.exclusions.push_back(std::move(*res.cert));
        }
    }

    IntervalSet covered;
    for (const auto& t : transitive_) {
        if (!out.upper.contains(t.cycle.components)) continue;
        auto cert = detail::membership_search(f_, y, t.cycle, t.report, budget_.depth, budget_.width_cap, nullptr);
        if (!cert) continue;
        covered = covered.unite(t.cycle.components);
        out.lower_intervals.push_back(std::move(*cert));
    }

    for (const auto& o : orbits_) {
        auto in = [&](const IntervalSet& s) {
            return std::all_of(o.points.begin(), o.points.end(), [&](const Rational& p) { return s.contains(p); });
        };
        if (in(covered) || !in(out.upper)) continue;
        if (auto tail = find_exact_tail(f_, y, o, budget_.depth, budget_.width_cap)) {
            out.lower_points.push_back({o, std::move(*tail)});
            continue;
        }
        for (const auto& t : o.points) {
            if (auto c = find_contraction(f_, y, t, o.least_period, budget_.depth, budget_.width_cap)) {
                out.lower_points.push_back({o, std::move(*c)});
                break;
            }
        }
    }

    out.exact = out.lower() == out.upper;
    return out;
}

SalphaEnclosure salpha_enclosure(const PLMap& f, const Rational& y, const Budget& budget,
                                 const std::vector<CycleOfIntervals>& proposed) {
    return EnclosureContext(f, budget, proposed).enclose(y);
}

IntervalSet beta_upper(const PLMap& f, const Rational& y, const Budget& budget) {
    return salpha_enclosure(f, y, budget).upper;
}

}  // namespace backlim
