#include "backlim/backlimits.hpp"
#include "internal/search.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace backlim {

const char* certificate_kind(const Certificate& c) {
    struct Kind {
        const char* operator()(const ExactTailCert&) const { return "ExactTailCert"; }
        const char* operator()(const ContractionCert&) const { return "ContractionCert"; }
        const char* operator()(const AvoidanceCert&) const { return "AvoidanceCert"; }
        const char* operator()(const CycleMembershipCert&) const { return "CycleMembershipCert"; }
    };
    return std::visit(Kind{}, c);
}

bool AvoidanceCert::excludes(const Rational& x, const Interval& domain) const {
    return region.relative_interior_contains(x, domain) &&
           !std::binary_search(punctures.begin(), punctures.end(), x);
}

IntervalSet AvoidanceCert::upper(const Interval& domain) const {
    std::vector<Rational> inside;
    for (const auto& p : punctures)
        if (region.contains(p)) inside.push_back(p);
    return region.complement(domain).unite(IntervalSet::points(inside));
}

std::optional<ExactTailCert> find_exact_tail(const PLMap& f, const Rational& y, const PeriodicOrbit& orbit,
                                             std::size_t depth, std::size_t node_budget, SearchStats* stats) {
    if (orbit.points.empty()) throw PreconditionError("empty orbit");
    for (std::size_t i = 0; i < orbit.points.size(); ++i)
        if (f.eval(orbit.points[i]) != orbit.points[(i + 1) % orbit.points.size()])
            throw PreconditionError("not a periodic orbit of the map");
    auto hit = detail::search_connector(
        f, y, IntervalSet::points(orbit.points), [&](const Rational& z) { return orbit.contains(z); }, depth,
        node_budget, stats);
    if (!hit) return std::nullopt;
    return ExactTailCert{orbit, hit->z, hit->k};
}

namespace {

// Inverse image of an interval under v -> a v + b (a != 0).
Interval affine_preimage(const Rational& a, const Rational& b, const Interval& iv) {
    Rational u = (iv.lo() - b) / a;
    Rational w = (iv.hi() - b) / a;
    return Interval(min(u, w), max(u, w));
}

Interval affine_image(const Rational& a, const Rational& b, const Interval& iv) {
    Rational u = a * iv.lo() + b;
    Rational w = a * iv.hi() + b;
    return Interval(min(u, w), max(u, w));
}

}  // namespace

std::optional<ContractionCert> find_contraction(const PLMap& f, const Rational& y, const Rational& t,
                                                std::size_t p, std::size_t depth, std::size_t node_budget,
                                                SearchStats* stats) {
    if (p == 0) throw PreconditionError("period must be >= 1");
    if (!f.domain().contains(t)) throw PreconditionError("target outside domain");
    std::vector<Rational> orbit = forward_orbit(f, t, p);
    if (orbit.back() != t) throw PreconditionError(t.str() + " is not fixed by f^" + std::to_string(p));

    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    std::vector<std::size_t> word;
    std::optional<ContractionCert> result;
    const Rational one(1);

    // Step i pulls orbit[p-i+1] back to orbit[p-i]; only the piece is free.
    std::function<void(std::size_t, const Rational&, const Rational&, const Interval&)> walk =
        [&](std::size_t i, const Rational& a, const Rational& b, const Interval& valid) {
            if (result || st.budget_hit) return;
            if (i > p) {
                ++st.words_tried;
                if (a.abs() >= one) return;
                Interval J = valid;
                if (a.sign() > 0) {
                    J = affine_image(a, b, valid);
                } else {
                    Rational r = min(t - valid.lo(), valid.hi() - t);
                    if (r.is_zero()) return;
                    J = affine_image(a, b, Interval(t - r, t + r));
                }
                if (J.degenerate()) return;
                auto hit = detail::search_connector(
                    f, y, IntervalSet(J), [&](const Rational& z) { return z != t && J.contains(z); }, depth,
                    node_budget, &st);
                if (hit) result = ContractionCert{t, p, word, J, hit->z, hit->k, a, b};
                return;
            }
            const Rational& x = orbit[p - i];
            for (const auto& piece : f.pieces()) {
                if (piece.constant() || !piece.span.contains(x)) continue;
                Interval range = piece.image_of(piece.span);
                auto narrowed = valid.intersect(affine_preimage(a, b, range));
                if (!narrowed || narrowed->degenerate()) continue;
                word.push_back(piece.index);
                walk(i + 1, a / piece.slope, (b - piece.intercept) / piece.slope, *narrowed);
                word.pop_back();
                if (result) return;
            }
        };
    walk(1, one, Rational(0), f.domain());
    return result;
}

namespace {

// Tree nodes of y inside region; nullopt if that set is infinite or too big.
std::optional<std::vector<Rational>> punctures_in(const PLMap& f, const Rational& y, const IntervalSet& region,
                                                  std::size_t cap) {
    std::set<Rational> seen;
    if (!region.contains(y)) return std::vector<Rational>{};
    std::deque<Rational> queue{y};
    seen.insert(y);
    while (!queue.empty()) {
        Rational p = queue.front();
        queue.pop_front();
        for (const auto& pre : f.preimages_of(p)) {
            if (pre.where.degenerate()) {
                if (!region.contains(pre.where.lo()) || !seen.insert(pre.where.lo()).second) continue;
                if (seen.size() > cap) return std::nullopt;
                queue.push_back(pre.where.lo());
                continue;
            }
            const IntervalSet hits = region.intersect(IntervalSet(pre.where));
            for (const auto& part : hits.parts()) {
                if (!part.degenerate()) return std::nullopt;
                if (seen.insert(part.lo()).second) {
                    if (seen.size() > cap) return std::nullopt;
                    queue.push_back(part.lo());
                }
            }
        }
    }
    return std::vector<Rational>(seen.begin(), seen.end());
}

}  // namespace

AvoidanceResult avoided_region(const PLMap& f, const Rational& y, const IntervalSet& seed, std::size_t depth,
                               std::size_t component_cap) {
    if (seed.empty()) return {std::nullopt, "empty seed"};
    if (!IntervalSet(f.domain()).contains(seed)) return {std::nullopt, "seed outside domain"};
    if (seed.contains(y)) return {std::nullopt, "point inside seed"};
    if (!seed.contains(f.image(seed))) return {std::nullopt, "seed not invariant"};

    AvoidanceCert cert{seed, 0, seed, {}, false};
    for (std::size_t layer = 1; layer <= depth; ++layer) {
        IntervalSet next = cert.region.unite(f.preimage(cert.region).nondegenerate());
        if (next == cert.region) {
            cert.stabilized = true;
            break;
        }
        if (next.size() > component_cap) break;
        auto holes = punctures_in(f, y, next, component_cap);
        if (!holes) break;
        cert.region = std::move(next);
        cert.punctures = std::move(*holes);
        cert.depth_used = layer;
    }
    return {std::move(cert), {}};
}

namespace detail {

std::optional<CycleMembershipCert> membership_search(const PLMap& f, const Rational& y, const CycleOfIntervals& m,
                                                     const ExceptionalReport& report, std::size_t depth,
                                                     std::size_t node_budget, SearchStats* stats) {
    const auto& E = report.exceptional;
    auto accept = [&](const Rational& z) {
        auto idx = m.components.part_of(z);
        return idx && m.components.parts()[*idx].strictly_contains(z) &&
               std::find(E.begin(), E.end(), z) == E.end();
    };
    auto hit = search_connector(f, y, m.components, accept, depth, node_budget, stats);
    if (!hit) return std::nullopt;
    return CycleMembershipCert{m, hit->z, hit->k, report};
}

}  // namespace detail

std::optional<CycleMembershipCert> cycle_membership(const PLMap& f, const Rational& y, const CycleOfIntervals& m,
                                                    const MarkovSystem& ms, std::size_t depth,
                                                    std::size_t node_budget, SearchStats* stats) {
    Verdict v;
    try {
        v = is_transitive(ms, m);
    } catch (const std::invalid_argument& e) {
        throw PreconditionError(e.what());
    }
    if (v != Verdict::Yes) throw PreconditionError("cycle is not transitive (" + std::string(to_string(v)) + ")");
    auto report = exceptional_set(f, ms, m);
    if (!report.undecided.empty()) throw PreconditionError("exceptional set undecided within cap");
    return detail::membership_search(f, y, m, report, depth, node_budget, stats);
}

}  // namespace backlim
