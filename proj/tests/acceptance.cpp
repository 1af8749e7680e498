// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include "backlim/cli.hpp"
#include "backlim/corpus.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <tuple>

using namespace backlim;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string why;

    void need(bool cond, const std::string& what) {
        if (!cond && pass) why = what;
        pass = pass && cond;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// True when some expectation has this kind and every listed param matches.
bool covers(const CorpusEntry& e, const std::string& kind, const json& params, const json& expected = true) {
    for (const auto& x : e.expectations) {
        if (x.kind != kind || x.expected != expected) continue;
        bool all = true;
        for (const auto& [k, v] : params.items()) all = all && x.params.contains(k) && x.params[k] == v;
        if (all) return true;
    }
    return false;
}

std::string first_failure(const EntryResult& r) {
    for (const auto& x : r.results)
        if (!x.pass) return x.label;
    return {};
}

// Runs an entry, requiring every expectation to pass within the time limit.
void run_timed(Outcome& o, const CorpusEntry& e, double limit) {
    auto t0 = Clock::now();
    auto r = run_entry(e);
    double s = seconds_since(t0);
    o.need(r.pass(), e.name + " failed: " + first_failure(r));
    std::ostringstream t;
    t << e.name << " took " << s << " s, limit " << limit << " s";
    o.need(s < limit, t.str());
}

Outcome f5_example() {
    Outcome o;
    auto e = build_f5();
    o.need(covers(e, "member", {{"orbit", {"0", "1", "5"}}, {"point", "0"}, {"via", "ExactTailCert"}}),
           "no exact-tail claim for {0,1,5}");
    o.need(covers(e, "member", {{"orbit", {"2", "4"}}, {"via", "ContractionCert"}, {"g_slope", "1/2"}}),
           "no contraction claim for {2,4}");
    o.need(covers(e, "excluded", {{"points", {"3"}}, {"seed", "[2,4]"}}), "no exclusion claim for 3");
    run_timed(o, e, 1.0);
    return o;
}

Outcome f8_example() {
    Outcome o;
    auto e = build_f8();
    o.need(covers(e, "member", {{"orbit", {"0", "4", "8"}}, {"point", "0"}}), "no claim for {0,4,8}");
    o.need(covers(e, "member",
                  {{"orbit", {"1", "5", "3", "7"}}, {"via", "ContractionCert"}, {"g_slope", "1/5"}, {"g_intercept", "4/5"}}),
           "no contraction claim for {1,5,3,7}");
    o.need(covers(e, "member", {{"orbit", {"14/3"}}, {"via", "ContractionCert"}, {"g_slope", "-1/5"}, {"g_intercept", "28/5"}}),
           "no contraction claim for 14/3");
    o.need(covers(e, "excluded", {{"points", {"2", "6"}}, {"seed", "[3/2,5/2];[11/2,13/2]"}}), "no exclusion claim for {2,6}");
    run_timed(o, e, 1.0);
    return o;
}

Outcome overlap_example() {
    Outcome o;
    auto e = build_overlap();
    o.need(covers(e, "enclosure_exact", {{"point", "1/2"}}, "[1/3,2/3]"), "no claim at 1/2");
    o.need(covers(e, "enclosure_exact", {{"point", "1/3"}}, "[0,2/3]"), "no claim at 1/3");
    o.need(covers(e, "enclosure_exact", {{"point", "2/3"}}, "[1/3,1]"), "no claim at 2/3");
    // 50 grid points k/51
    o.need(covers(e, "property_check", {{"check", "overlap_count"}, {"denominator", 51}}, 3), "no grid count claim");
    run_timed(o, e, 5.0);
    return o;
}

Outcome nomax_example() {
    Outcome o;
    auto e = build_nomax(8);
    for (std::size_t n = 1; n <= 5; ++n)
        for (const Rational& x : {nomax_b(n), nomax_a(n)}) {
            json lower = json::array();
            for (std::size_t m = n; m >= 1; --m) lower.push_back(nomax_a(m).str());
            o.need(covers(e, "property_check", {{"check", "lower_equals"}, {"point", x.str()}}, lower),
                   "no lower claim at " + x.str());
            o.need(covers(e, "excluded",
                          {{"point", x.str()}, {"points", {nomax_a(n + 1).str(), nomax_a(n + 2).str(), "0"}}}),
                   "no exclusion claim at " + x.str());
        }
    o.need(covers(e, "property_check", {{"check", "nomax_chain"}, {"bands", 5}}), "no chain claim");
    run_timed(o, e, 10.0);
    return o;
}

Outcome chuxiong_example() {
    Outcome o;
    auto e = build_chuxiong(6);
    for (std::size_t n = 0; n <= 4; ++n)
        o.need(covers(e, "property_check", {{"check", "chuxiong_properties"}, {"level", n}}),
               "no property claim at level " + std::to_string(n));
    o.need(covers(e, "property_check", {{"check", "chuxiong_approach"}, {"levels", 5}}), "no approach claim");
    run_timed(o, e, 30.0);
    return o;
}

std::tuple<int, long, std::size_t> shark_key(std::size_t n) {
    long k = 0;
    while (n % 2 == 0) n /= 2, ++k;
    if (n == 1) return {1, -k, 1};
    return {0, k, n};
}

Outcome period_forcing() {
    Outcome o;
    for (auto e : {build_f5(), build_f8()}) {
        EnclosureContext ctx(e.map, e.budget, e.proposed_cycles);
        auto enc = ctx.enclose(Rational(0));
        auto p = enc.certified_periods();
        auto has = [&](std::size_t n) { return std::find(p.begin(), p.end(), n) != p.end(); };
        o.need(has(3), e.name + ": period 3 not certified");
        o.need(has(1) || has(2), e.name + ": neither period 1 nor 2 certified");
        for (const auto& c : enc.lower_points)
            o.need(verify_certificate(e.map, Rational(0), c.cert).ok, e.name + ": certificate fails");
    }
    for (std::size_t a = 1; a <= 64; ++a)
        for (std::size_t b = 1; b <= 64; ++b) {
            bool ab = sharkovsky_precedes(a, b);
            bool want = a != b && shark_key(a) < shark_key(b);
            o.need(ab == want, "order wrong at " + std::to_string(a) + ", " + std::to_string(b));
            for (std::size_t c = 1; c <= 64 && ab; ++c)
                if (sharkovsky_precedes(b, c)) o.need(sharkovsky_precedes(a, c), "order not transitive");
        }
    return o;
}

Outcome property_suites() {
    Outcome o;
    auto t0 = Clock::now();
    int rc = std::system(BACKLIM_TESTS_BINARY " --no-intro=true --minimal=true");
    double s = seconds_since(t0);
    o.need(rc == 0, "unit and property suites failed");
    o.need(s < 180.0, "full suite took " + std::to_string(s) + " s");
    return o;
}

Outcome determinism() {
    Outcome o;
    auto result_of = [](const char* jobs) {
        std::ostringstream out, err;
        int rc = run_cli({"backlim", "corpus", "verify", "all", "--jobs", jobs}, out, err);
        auto j = json::parse(out.str(), nullptr, false);
        return std::make_pair(rc, j.is_discarded() ? std::string() : j["result"].dump());
    };
    auto [rc1, a] = result_of("1");
    auto [rc2, b] = result_of("3");
    o.need(rc1 == kExitOk && rc2 == kExitOk, "corpus verify failed");
    o.need(!a.empty() && a == b, "result sections differ");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 f5 example", f5_example},
        {"2 f8 example", f8_example},
        {"3 overlap example", overlap_example},
        {"4 no-max family", nomax_example},
        {"5 nested cycle truncation", chuxiong_example},
        {"6 period forcing", period_forcing},
        {"7 property suites", property_suites},
        {"8 determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& ex) {
            o = {false, std::string("threw: ") + ex.what()};
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << seconds_since(t0) << " s)";
        if (!o.pass) std::cout << ": " << o.why;
        std::cout << std::endl;
        failures += !o.pass;
    }
    return failures;
}
