// Independent re-checker. Uses only the map primitives (eval, image,
// preimage) plus the Markov module for transitivity and E.
#include "backlim/backlimits.hpp"

#include <algorithm>
#include <set>

namespace backlim {

namespace {

Verification fail(std::string reason) { return {false, std::move(reason)}; }
Verification pass() { return {true, {}}; }

bool reaches(const PLMap& f, const Rational& z, std::size_t k, const Rational& y) {
    if (!f.domain().contains(z)) return false;
    return f.eval_n(z, k) == y;
}

Verification check(const PLMap& f, const Rational& y, const ExactTailCert& c) {
    const auto& pts = c.orbit.points;
    if (pts.empty()) return fail("empty orbit");
    if (c.orbit.least_period != pts.size()) return fail("least period does not match orbit length");
    if (std::set<Rational>(pts.begin(), pts.end()).size() != pts.size()) return fail("orbit points repeat");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!f.domain().contains(pts[i])) return fail("orbit point outside domain");
        if (f.eval(pts[i]) != pts[(i + 1) % pts.size()]) return fail("orbit is not closed under f");
    }
    if (std::find(pts.begin(), pts.end(), c.connector_z) == pts.end()) return fail("connector not on orbit");
    if (!reaches(f, c.connector_z, c.connector_k, y)) return fail("connector does not reach the point");
    return pass();
}

Verification check(const PLMap& f, const Rational& y, const ContractionCert& c) {
    if (c.period_p == 0) return fail("period must be >= 1");
    if (c.piece_word.size() != c.period_p) return fail("word length differs from period");
    if (!f.domain().contains(c.target_t) || f.eval_n(c.target_t, c.period_p) != c.target_t)
        return fail("target is not p-periodic");
    if (!c.J.contains(c.target_t)) return fail("J does not contain the target");
    if (c.J.degenerate()) return fail("J is degenerate");

    Rational a(1), b(0);
    Interval cur = c.J;
    Rational value = c.target_t;
    for (auto w : c.piece_word) {
        if (w >= f.piece_count()) return fail("piece index out of range");
        const Piece& piece = f.pieces()[w];
        if (piece.constant()) return fail("constant piece has no inverse branch");
        Rational lo = (cur.lo() - piece.intercept) / piece.slope;
        Rational hi = (cur.hi() - piece.intercept) / piece.slope;
        cur = Interval(min(lo, hi), max(lo, hi));
        if (!piece.span.contains(cur)) return fail("inverse branch leaves the piece span");
        // The branch is a true inverse only where the piece covers the value.
        value = (value - piece.intercept) / piece.slope;
        a = a / piece.slope;
        b = (b - piece.intercept) / piece.slope;
    }
    if (value != c.target_t) return fail("g does not fix the target");
    if (a.abs() >= Rational(1)) return fail("composed inverse slope is not contracting");
    if (a != c.g_slope || b != c.g_intercept) return fail("stated g differs from the composed branches");
    if (!c.J.contains(cur)) return fail("g(J) not inside J");
    if (!c.J.contains(c.connector_z)) return fail("connector not in J");
    if (c.connector_z == c.target_t) return fail("connector equals the target");
    if (!reaches(f, c.connector_z, c.connector_k, y)) return fail("connector does not reach the point");
    return pass();
}

Verification check(const PLMap& f, const Rational& y, const AvoidanceCert& c) {
    const IntervalSet dom(f.domain());
    if (c.seed.empty()) return fail("empty seed");
    if (!dom.contains(c.seed) || !dom.contains(c.region)) return fail("set outside domain");
    if (!c.seed.contains(f.image(c.seed))) return fail("seed not invariant");
    if (c.seed.contains(y)) return fail("point inside seed");
    if (!c.region.contains(c.seed)) return fail("region does not contain seed");
    if (!c.region.contains(f.image(c.region))) return fail("region not invariant");
    if (!std::is_sorted(c.punctures.begin(), c.punctures.end()) ||
        std::adjacent_find(c.punctures.begin(), c.punctures.end()) != c.punctures.end())
        return fail("punctures not sorted and unique");
    auto punctured = [&](const Rational& x) {
        return std::binary_search(c.punctures.begin(), c.punctures.end(), x);
    };
    if (c.region.contains(y) && !punctured(y)) return fail("point lies in the excluded set");
    for (const auto& p : c.punctures) {
        if (!c.region.contains(p)) continue;
        const IntervalSet pre = f.preimage(IntervalSet(Interval::point(p)));
        for (const auto& part : pre.parts()) {
            if (part.degenerate()) {
                if (c.region.contains(part.lo()) && !punctured(part.lo()))
                    return fail("preimage of a puncture is not punctured");
                continue;
            }
            const IntervalSet hits = c.region.intersect(IntervalSet(part));
            for (const auto& h : hits.parts()) {
                if (!h.degenerate()) return fail("puncture has an interval of preimages in the region");
                if (!punctured(h.lo())) return fail("preimage of a puncture is not punctured");
            }
        }
    }
    return pass();
}

Verification check(const PLMap& f, const Rational& y, const CycleMembershipCert& c) {
    const auto& m = c.cycle;
    if (m.base.degenerate() || m.period == 0) return fail("degenerate cycle");
    std::vector<Interval> its{m.base};
    for (std::size_t i = 1; i <= m.period; ++i) {
        auto img = f.image(its.back());
        if (img.size() != 1) return fail("image of a component is not an interval");
        its.push_back(img.parts().front());
    }
    if (its.back() != m.base) return fail("f^k(K) differs from K");
    its.pop_back();
    for (std::size_t i = 0; i < its.size(); ++i)
        for (std::size_t j = i + 1; j < its.size(); ++j)
            if (its[i].intersect(its[j])) return fail("cycle iterates are not disjoint");
    if (IntervalSet::from(its) != m.components) return fail("components differ from the iterates of K");

    auto ms = markov_partition(f);
    if (!ms) return fail("map is not Markov within cap");
    Verdict v;
    try {
        v = is_transitive(*ms, m);
    } catch (const std::invalid_argument&) {
        return fail("cycle is not a union of Markov cells");
    }
    if (v != Verdict::Yes) return fail("cycle is not transitive");
    auto report = exceptional_set(f, *ms, m);
    if (!report.undecided.empty()) return fail("exceptional set undecided");
    if (report.exceptional != c.exceptional.exceptional) return fail("stated exceptional set is wrong");

    auto idx = m.components.part_of(c.hop_z);
    if (!idx || !m.components.parts()[*idx].strictly_contains(c.hop_z)) return fail("hop not strictly inside M");
    const auto& E = report.exceptional;
    if (std::find(E.begin(), E.end(), c.hop_z) != E.end()) return fail("hop lies in E");
    if (!reaches(f, c.hop_z, c.hop_k, y)) return fail("hop does not reach the point");
    return pass();
}

}  // namespace

Verification verify_certificate(const PLMap& f, const Rational& y, const Certificate& cert) {
    if (!f.domain().contains(y)) return fail("point outside domain");
    try {
        return std::visit([&](const auto& c) { return check(f, y, c); }, cert);
    } catch (const std::exception& e) {
        return fail(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace backlim
