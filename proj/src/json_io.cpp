#include "backlim/json_io.hpp"

namespace backlim {

json to_json(const Rational& q) { return q.str(); }
json to_json(const Interval& iv) { return json::array({iv.lo().str(), iv.hi().str()}); }

json to_json(const IntervalSet& s) {
    json out = json::array();
    for (const auto& iv : s.parts()) out.push_back(to_json(iv));
    return out;
}

json to_json(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

json to_json(const PeriodicOrbit& o) {
    return {{"points", to_json(o.points)}, {"least_period", o.least_period}};
}

json to_json(const PeriodicStructure& ps) {
    json orbits = json::array();
    for (const auto& o : ps.isolated_orbits) orbits.push_back(to_json(o));
    json continua = json::array();
    for (const auto& c : ps.fixed_intervals) continua.push_back({{"period", c.period}, {"set", to_json(c.set)}});
    return {{"isolated_orbits", orbits}, {"fixed_intervals", continua}};
}

json to_json(const CycleOfIntervals& m) {
    return {{"base", to_json(m.base)}, {"period", m.period}, {"components", to_json(m.components)}};
}

json to_json(const ExceptionalReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back({{"point", w.point.str()}, {"z", w.z.str()}, {"k", w.k}});
    return {{"E", to_json(r.exceptional)},
            {"accessible_endpoints", to_json(r.accessible_endpoints)},
            {"undecided", to_json(r.undecided)},
            {"witnesses", witnesses}};
}

json to_json(const MarkovSystem& ms) {
    json rows = json::array();
    for (const auto& row : ms.matrix) {
        std::string s;
        for (char c : row) s.push_back(c ? '1' : '0');
        rows.push_back(s);
    }
    json expanding = json::array();
    for (char c : ms.cell_expanding) expanding.push_back(c != 0);
    return {{"partition", to_json(ms.partition)},
            {"matrix", rows},
            {"cell_expanding", expanding},
            {"expanding", ms.expanding}};
}

namespace {

struct CertJson {
    json operator()(const ExactTailCert& c) const {
        return {{"type", "ExactTailCert"},
                {"orbit", to_json(c.orbit)},
                {"connector_z", c.connector_z.str()},
                {"connector_k", c.connector_k}};
    }
    json operator()(const ContractionCert& c) const {
        return {{"type", "ContractionCert"},
                {"target_t", c.target_t.str()},
                {"period_p", c.period_p},
                {"piece_word", c.piece_word},
                {"J", to_json(c.J)},
                {"connector_z", c.connector_z.str()},
                {"connector_k", c.connector_k},
                {"g", {{"slope", c.g_slope.str()}, {"intercept", c.g_intercept.str()}}}};
    }
    json operator()(const AvoidanceCert& c) const {
        return {{"type", "AvoidanceCert"},
                {"seed_A0", to_json(c.seed)},
                {"depth_used", c.depth_used},
                {"final_A", {{"region", to_json(c.region)}, {"punctures", to_json(c.punctures)}}},
                {"stabilized", c.stabilized}};
    }
    json operator()(const CycleMembershipCert& c) const {
        return {{"type", "CycleMembershipCert"},
                {"cycle", to_json(c.cycle)},
                {"hop_z", c.hop_z.str()},
                {"hop_k", c.hop_k},
                {"exceptional", to_json(c.exceptional)}};
    }
};

Rational rat(const json& j) {
    if (!j.is_string()) throw ParseError("expected a rational string");
    return Rational::parse(j.get<std::string>());
}

Interval ival(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [lo,hi]");
    return Interval(rat(j[0]), rat(j[1]));
}

IntervalSet iset(const json& j) {
    if (!j.is_array()) throw ParseError("expected a list of intervals");
    std::vector<Interval> parts;
    for (const auto& e : j) parts.push_back(ival(e));
    return IntervalSet::from(std::move(parts));
}

std::vector<Rational> rats(const json& j) {
    if (!j.is_array()) throw ParseError("expected a list of rationals");
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rat(e));
    return out;
}

std::size_t nat(const json& j) {
    if (!j.is_number_unsigned()) throw ParseError("expected a natural number");
    return j.get<std::size_t>();
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field ") + name);
    return j.at(name);
}

CycleOfIntervals cycle_from(const json& j) {
    return {ival(field(j, "base")), nat(field(j, "period")), iset(field(j, "components"))};
}

}  // namespace

json to_json(const Certificate& c) { return std::visit(CertJson{}, c); }

Certificate certificate_from_json(const json& j) {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "ExactTailCert") {
        const json& o = field(j, "orbit");
        return ExactTailCert{{rats(field(o, "points")), nat(field(o, "least_period"))},
                             rat(field(j, "connector_z")),
                             nat(field(j, "connector_k"))};
    }
    if (type == "ContractionCert") {
        std::vector<std::size_t> word;
        for (const auto& w : field(j, "piece_word")) word.push_back(nat(w));
        const json& g = field(j, "g");
        return ContractionCert{rat(field(j, "target_t")),    nat(field(j, "period_p")),
                               std::move(word),              ival(field(j, "J")),
                               rat(field(j, "connector_z")), nat(field(j, "connector_k")),
                               rat(field(g, "slope")),       rat(field(g, "intercept"))};
    }
    if (type == "AvoidanceCert") {
        const json& a = field(j, "final_A");
        return AvoidanceCert{iset(field(j, "seed_A0")), nat(field(j, "depth_used")), iset(field(a, "region")),
                             rats(field(a, "punctures")), field(j, "stabilized").get<bool>()};
    }
    if (type == "CycleMembershipCert") {
        const json& e = field(j, "exceptional");
        CycleOfIntervals m = cycle_from(field(j, "cycle"));
        ExceptionalReport rep{m, rats(field(e, "E")), rats(field(e, "accessible_endpoints")),
                              rats(field(e, "undecided")), {}};
        for (const auto& w : field(e, "witnesses"))
            rep.witnesses.push_back({rat(field(w, "point")), rat(field(w, "z")), nat(field(w, "k"))});
        return CycleMembershipCert{m, rat(field(j, "hop_z")), nat(field(j, "hop_k")), rep};
    }
    throw ParseError("unknown certificate type " + type);
}

json to_json(const SalphaEnclosure& e) {
    json points = json::array();
    for (const auto& c : e.lower_points) points.push_back({{"orbit", to_json(c.orbit)}, {"certificate", to_json(c.cert)}});
    json intervals = json::array();
    for (const auto& c : e.lower_intervals)
        intervals.push_back({{"components", to_json(c.cycle.components)}, {"certificate", to_json(Certificate(c))}});
    json excl = json::array();
    for (const auto& c : e.exclusions) excl.push_back(to_json(Certificate(c)));
    json periods = e.certified_periods();
    return {{"point", e.y.str()},
            {"lower", to_json(e.lower())},
            {"lower_points", points},
            {"lower_intervals", intervals},
            {"upper", to_json(e.upper)},
            {"exclusions", excl},
            {"certified_periods", periods},
            {"beta_empty", e.beta_empty},
            {"exact", e.exact},
            {"depth", e.depth}};
}

json to_json(const BackwardTree& t) {
    json levels = json::array();
    for (std::size_t l = 0; l < t.levels.size(); ++l) {
        json nodes = json::array();
        for (auto i : t.levels[l]) {
            const auto& n = t.nodes[i];
            json node = {{"value", n.value.degenerate() ? to_json(n.value.lo()) : to_json(n.value)},
                         {"piece", n.piece},
                         {"sampled", n.sampled}};
            if (n.parent) node["parent"] = *n.parent;
            nodes.push_back(node);
        }
        levels.push_back({{"nodes", nodes}, {"truncated", t.truncated[l] != 0}});
    }
    return {{"root", t.root.str()}, {"depth", t.depth}, {"width_cap", t.width_cap}, {"levels", levels}};
}

json to_json(const SearchStats& s) {
    return {{"nodes_visited", s.nodes_visited}, {"words_tried", s.words_tried}, {"budget_hit", s.budget_hit}};
}

}  // namespace backlim
