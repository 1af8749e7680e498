#include "backlim/corpus.hpp"

#include <algorithm>

namespace backlim {

namespace {

Rational q(const char* s) { return Rational::parse(s); }

PLMap dots_map(const char* lo, const char* hi, std::initializer_list<std::pair<const char*, const char*>> pts) {
    std::vector<Dot> dots;
    for (const auto& [x, y] : pts) dots.push_back({q(x), q(y)});
    return make_plmap(Interval(q(lo), q(hi)), std::move(dots));
}

json strs(std::initializer_list<const char*> xs) {
    json out = json::array();
    for (const char* x : xs) out.push_back(x);
    return out;
}

json strs(const std::vector<Rational>& xs) { return to_json(xs); }

Expectation sharkovsky(const char* point) {
    return {"property_check", "sharkovsky(" + std::string(point) + ")",
            {{"check", "sharkovsky"}, {"point", point}}, true,
            "the certified period set of the enclosure contains 3 and also 1 or 2"};
}

}  // namespace

Rational nomax_a(std::size_t i) { return Rational(2) / Rational(1L << i); }
Rational nomax_b(std::size_t i) { return Rational(3) / Rational(1L << (i + 1)); }

std::array<Interval, 5> fifths(const Interval& J) {
    Rational step = J.length() / Rational(5);
    std::array<Interval, 5> out{J, J, J, J, J};
    for (std::size_t i = 0; i < 5; ++i)
        out[i] = Interval(J.lo() + step * Rational(static_cast<long>(i)),
                          J.lo() + step * Rational(static_cast<long>(i + 1)));
    return out;
}

CorpusEntry build_f5() {
    CorpusEntry e{"f5", dots_map("0", "5", {{"0", "1"}, {"1", "5"}, {"4", "2"}, {"5", "0"}}), {}, {}, {}, {}};
    e.expectations = {
        {"member", "orbit {0,1,5} in sa(0)", {{"point", "0"}, {"orbit", strs({"0", "1", "5"})}, {"via", "ExactTailCert"}},
         true, "the period-three orbit lies in the special alpha-limit set of 0"},
        {"member", "orbit {2,4} in sa(0)",
         {{"point", "0"}, {"orbit", strs({"2", "4"})}, {"via", "ContractionCert"}, {"g_slope", "1/2"}}, true,
         "the period-two orbit lies in the special alpha-limit set of 0"},
        {"excluded", "3 not in sa(0)", {{"point", "0"}, {"points", strs({"3"})}, {"seed", "[2,4]"}}, true,
         "the fixed point 3 is not in the special alpha-limit set of 0"},
        {"property_check", "fixed points", {{"check", "fixed_points"}}, strs({"3"}), "the unique fixed point is 3"},
        sharkovsky("0"),
    };
    return e;
}

CorpusEntry build_f8() {
    CorpusEntry e{"f8", dots_map("0", "8", {{"0", "4"}, {"4", "8"}, {"5", "3"}, {"8", "0"}}), {}, {}, {}, {}};
    e.expectations = {
        {"member", "orbit {0,4,8} in sa(0)", {{"point", "0"}, {"orbit", strs({"0", "4", "8"})}, {"via", "ExactTailCert"}},
         true, "the period-three orbit lies in the special alpha-limit set of 0"},
        {"member", "orbit {1,5,3,7} in sa(0)",
         {{"point", "0"},
          {"orbit", strs({"1", "5", "3", "7"})},
          {"via", "ContractionCert"},
          {"g_slope", "1/5"},
          {"g_intercept", "4/5"}},
         true, "the period-four orbit lies in the special alpha-limit set of 0"},
        {"member", "orbit {14/3} in sa(0)",
         {{"point", "0"},
          {"orbit", strs({"14/3"})},
          {"via", "ContractionCert"},
          {"g_slope", "-1/5"},
          {"g_intercept", "28/5"}},
         true, "the repelling fixed point 14/3 lies in the special alpha-limit set of 0"},
        {"excluded", "{2,6} not in sa(0)",
         {{"point", "0"}, {"points", strs({"2", "6"})}, {"seed", "[3/2,5/2];[11/2,13/2]"}}, true,
         "the period-two orbit {2,6} is not in the special alpha-limit set of 0"},
        sharkovsky("0"),
    };
    return e;
}

CorpusEntry build_overlap() {
    CorpusEntry e{"overlap",
                  dots_map("0", "1",
                           {{"0", "1/3"},
                            {"1/6", "0"},
                            {"1/3", "1/3"},
                            {"4/9", "2/3"},
                            {"5/9", "1/3"},
                            {"2/3", "2/3"},
                            {"5/6", "1"},
                            {"1", "2/3"}}),
                  {},
                  {},
                  {},
                  {}};
    auto exact = [](const char* y, const char* set, const char* note) {
        return Expectation{"enclosure_exact", std::string("sa(") + y + ") = " + set, {{"point", y}}, set, note};
    };
    e.expectations = {
        {"cycle_valid", "[1/3,2/3] is a cycle", {{"base", "[1/3,2/3]"}, {"period", 1}}, true,
         "the middle full horseshoe is invariant"},
        exact("1/2", "[1/3,2/3]", "interior points of the middle horseshoe see exactly that horseshoe"),
        exact("1/3", "[0,2/3]", "the shared endpoint 1/3 sees both left and middle horseshoes"),
        exact("2/3", "[1/3,1]", "the shared endpoint 2/3 sees both middle and right horseshoes"),
        exact("1/6", "[0,1/3]", "interior points of the left horseshoe see exactly that horseshoe"),
        {"property_check", "three enclosures contain (1/3,2/3)", {{"check", "overlap_count"}, {"denominator", 51}}, 3,
         "at most three distinct special alpha-limit sets contain a given open set, and three occur"},
    };
    return e;
}

CorpusEntry build_nomax(std::size_t N) {
    if (N < 4 || N > 30) throw std::invalid_argument("nomax level must be in [4,30]");
    std::vector<Dot> dots{{Rational(0), Rational(0)}, {nomax_a(N), nomax_a(N)}};
    for (std::size_t i = N - 1; i >= 1; --i) {
        dots.push_back({nomax_b(i), nomax_a(i + 2)});
        dots.push_back({nomax_a(i), nomax_a(i)});
    }
    CorpusEntry e{"nomax", make_plmap(Interval(0, 1), std::move(dots)), {}, {}, {}, {}};
    for (std::size_t n = 1; n + 3 <= N; ++n) {
        std::vector<Rational> lower;
        for (std::size_t m = 1; m <= n; ++m) lower.push_back(nomax_a(m));
        std::sort(lower.begin(), lower.end());
        for (const Rational& x : {nomax_b(n), nomax_a(n)}) {
            std::string xs = x.str();
            e.expectations.push_back({"property_check", "lower of sa(" + xs + ") is {a_1..a_" + std::to_string(n) + "}",
                                      {{"check", "lower_equals"}, {"point", xs}}, strs(lower),
                                      "points of the band (a_{n+1}, a_n] see exactly a_1..a_n"});
            e.expectations.push_back({"excluded", "a_" + std::to_string(n + 1) + ", a_" + std::to_string(n + 2) +
                                                      ", 0 not in sa(" + xs + ")",
                                      {{"point", xs}, {"points", strs({nomax_a(n + 1), nomax_a(n + 2), Rational(0)})}},
                                      true, "lower fixed points and 0 are never reached backward"});
        }
    }
    e.expectations.push_back({"property_check", "strictly increasing chain without common superset",
                              {{"check", "nomax_chain"}, {"bands", N - 3}}, true,
                              "the special alpha-limit sets of the bands increase strictly with no maximal one"});
    return e;
}

namespace {

// Dots of T o R_n on J, where T is translation by shift.
void chuxiong_dots(const Interval& J, std::size_t n, std::size_t N, const Rational& shift, std::vector<Dot>& out) {
    if (n == N) {
        out.push_back({J.lo(), J.lo() + shift});
        out.push_back({J.hi(), J.hi() + shift});
        return;
    }
    auto [A, Jn, B, K, C] = fifths(J);
    out.push_back({A.lo(), A.lo() + shift});
    chuxiong_dots(Jn, n + 1, N, shift + (K.lo() - Jn.lo()), out);
    out.push_back({B.lo(), K.hi() + shift});
    out.push_back({K.lo(), Jn.lo() + shift});
    out.push_back({C.lo(), B.lo() + shift});
    out.push_back({C.hi(), C.hi() + shift});
}

}  // namespace

CorpusEntry build_chuxiong(std::size_t N) {
    if (N < 2 || N > 8) throw std::invalid_argument("chuxiong level must be in [2,8]");
    std::vector<Dot> dots;
    chuxiong_dots(Interval(0, 1), 0, N, Rational(0), dots);
    // Neighbouring levels emit the shared endpoint twice with the same value.
    dots.erase(std::unique(dots.begin(), dots.end()), dots.end());
    std::vector<Interval> levels{Interval(0, 1)};
    for (std::size_t n = 0; n < N; ++n) levels.push_back(fifths(levels.back())[1]);

    CorpusEntry e{"chuxiong", make_plmap(Interval(0, 1), std::move(dots)).simplified(), {}, {}, {}, levels};
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        e.expectations.push_back({"cycle_valid", "J_" + std::to_string(n) + " has period " + std::to_string(1u << n),
                                  {{"base", levels[n].str()}, {"period", 1u << n}}, true,
                                  "M_n = Orb(J_n) is a cycle of intervals of period 2^n"});
        e.expectations.push_back({"property_check", "nested-cycle properties at level " + std::to_string(n),
                                  {{"check", "chuxiong_properties"}, {"level", n}}, true,
                                  "properties (1)-(4) of the nested construction hold exactly"});
    }
    e.expectations.push_back({"property_check", "a_n in sa(x) approaching x",
                              {{"check", "chuxiong_approach"}, {"levels", N - 1}, {"depth", 40}}, true,
                              "a_n is certified in sa(x) for each level and a_n -> x strictly"});
    return e;
}

std::vector<std::string> corpus_names() { return {"f5", "f8", "overlap", "nomax", "chuxiong"}; }

CorpusEntry build_entry(const std::string& name) {
    if (name == "f5") return build_f5();
    if (name == "f8") return build_f8();
    if (name == "overlap") return build_overlap();
    if (name == "nomax") return build_nomax(8);
    if (name == "chuxiong") return build_chuxiong(6);
    throw std::invalid_argument("unknown corpus entry '" + name + "'");
}

bool PropertyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const BulletCheck& c) { return c.pass; });
}

namespace {

struct Linear {
    Interval image;
    Rational slope;
};

// f^steps on iv when every intermediate image stays inside one piece.
std::optional<Linear> linear_iterate(const PLMap& f, Interval iv, std::size_t steps) {
    Rational slope(1);
    for (std::size_t s = 0; s < steps; ++s) {
        auto piece = std::find_if(f.pieces().begin(), f.pieces().end(),
                                  [&](const Piece& p) { return p.span.contains(iv); });
        if (piece == f.pieces().end()) return std::nullopt;
        iv = piece->image_of(iv);
        slope = slope * piece->slope;
    }
    return Linear{iv, slope};
}

BulletCheck linear_bullet(const PLMap& f, const std::string& name, const Interval& from, const Interval& onto,
                          int sign, std::size_t steps) {
    auto lin = linear_iterate(f, from, steps);
    if (!lin) return {name, false, "not linear on " + from.str()};
    if (lin->slope.sign() != sign) return {name, false, "wrong orientation, slope " + lin->slope.str()};
    if (lin->image != onto) return {name, false, "image " + lin->image.str() + " != " + onto.str()};
    return {name, true, "slope " + lin->slope.str()};
}

}  // namespace

PropertyReport verify_chuxiong_properties(const CorpusEntry& entry, std::size_t n) {
    if (entry.levels.size() < 2) throw PreconditionError("entry has no nested cycle levels");
    const std::size_t N = entry.levels.size() - 1;
    if (n + 2 > N) throw PreconditionError("level must be <= N-2 = " + std::to_string(N >= 2 ? N - 2 : 0));
    const PLMap& f = entry.map;
    const Interval& Jn = entry.levels[n];
    const std::size_t p = std::size_t{1} << n;
    PropertyReport rep{n, {}};

    auto cn = check_cycle_of_intervals(f, Jn, p);
    auto cn1 = check_cycle_of_intervals(f, entry.levels[n + 1], 2 * p);
    rep.checks.push_back({"(1) M_n is a cycle of period 2^n", cn.cycle.has_value(), cn.failure});
    rep.checks.push_back({"(1) M_{n+1} is a cycle of period 2^(n+1)", cn1.cycle.has_value(), cn1.failure});
    bool nested = cn.cycle && cn1.cycle && cn.cycle->components.contains(cn1.cycle->components);
    rep.checks.push_back({"(1) M_{n+1} inside M_n", nested, {}});
    bool leftmost = cn.cycle && cn.cycle->components.parts().front() == Jn;
    rep.checks.push_back({"(2) J_n is the leftmost component", leftmost, {}});

    auto [A, J1, B, K, C] = fifths(Jn);
    bool split = J1 == entry.levels[n + 1] && !A.degenerate();
    rep.checks.push_back({"(3) J_n = A < J_{n+1} < B < K_{n+1} < C", split, {}});

    rep.checks.push_back(linear_bullet(f, "(4) A_n -> A_n u J_{n+1} u B_n increasing", A, Interval(A.lo(), B.hi()), 1, p));
    IntervalSet img(J1);
    for (std::size_t s = 0; s < p; ++s) img = f.image(img);
    rep.checks.push_back({"(4) J_{n+1} -> K_{n+1} onto", img == IntervalSet(K), "image " + img.str()});
    rep.checks.push_back(linear_bullet(f, "(4) B_n -> K_{n+1} u B_n u J_{n+1} decreasing", B, Interval(J1.lo(), K.hi()), -1, p));
    rep.checks.push_back(linear_bullet(f, "(4) K_{n+1} -> J_{n+1} increasing", K, J1, 1, p));
    rep.checks.push_back(linear_bullet(f, "(4) C_n -> B_n u K_{n+1} u C_n increasing", C, Interval(B.lo(), C.hi()), 1, p));
    return rep;
}

json to_json(const Expectation& e) {
    return {{"kind", e.kind}, {"label", e.label}, {"params", e.params}, {"expected", e.expected}, {"note", e.note}};
}

json expectations_json(const CorpusEntry& entry) {
    json list = json::array();
    for (const auto& e : entry.expectations) list.push_back(to_json(e));
    json cycles = json::array();
    for (const auto& m : entry.proposed_cycles) cycles.push_back(to_json(m));
    json levels = json::array();
    for (const auto& J : entry.levels) levels.push_back(to_json(J));
    json out = {{"name", entry.name}, {"expectations", list}, {"proposed_cycles", cycles}};
    if (!entry.levels.empty()) out["levels"] = levels;
    return out;
}

}  // namespace backlim
