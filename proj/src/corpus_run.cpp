#include "backlim/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace backlim {

bool EntryResult::pass() const {
    return std::all_of(results.begin(), results.end(), [](const ExpectationResult& r) { return r.pass; });
}

json to_json(const EntryResult& r) {
    json list = json::array();
    for (const auto& e : r.results)
        list.push_back({{"label", e.label}, {"kind", e.kind}, {"pass", e.pass}, {"detail", e.detail}});
    return {{"name", r.name}, {"pass", r.pass()}, {"expectations", list}};
}

namespace {

Rational rat(const json& j) { return Rational::parse(j.get<std::string>()); }

std::vector<Rational> rats(const json& j) {
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rat(e));
    return out;
}

class Runner {
public:
    explicit Runner(const CorpusEntry& e) : e_(e), f_(e.map) {}

    ExpectationResult run(const Expectation& x) {
        ExpectationResult r{x.label, x.kind, false, json::object()};
        try {
            if (x.kind == "member") member(x, r);
            else if (x.kind == "excluded") excluded(x, r);
            else if (x.kind == "enclosure_exact") enclosure_exact(x, r);
            else if (x.kind == "cycle_valid") cycle_valid(x, r);
            else if (x.kind == "property_check") property(x, r);
            else r.detail["error"] = "unknown expectation kind";
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail["error"] = ex.what();
        }
        return r;
    }

private:
    const CorpusEntry& e_;
    const PLMap& f_;
    std::optional<EnclosureContext> ctx_;
    std::map<Rational, SalphaEnclosure> cache_;

    std::size_t depth(const json& params) const {
        return params.contains("depth") ? params["depth"].get<std::size_t>() : e_.budget.depth;
    }

    const SalphaEnclosure& enclosure(const Rational& y) {
        auto it = cache_.find(y);
        if (it != cache_.end()) return it->second;
        if (!ctx_) ctx_.emplace(f_, e_.budget, e_.proposed_cycles);
        return cache_.emplace(y, ctx_->enclose(y)).first->second;
    }

    // Re-verifies every certificate inside an enclosure.
    std::string enclosure_failure(const SalphaEnclosure& enc) const {
        auto bad = [&](const Certificate& c) {
            auto v = verify_certificate(f_, enc.y, c);
            return v.ok ? std::string{} : std::string(certificate_kind(c)) + ": " + v.reason;
        };
        for (const auto& c : enc.lower_points)
            if (auto s = bad(c.cert); !s.empty()) return s;
        for (const auto& c : enc.lower_intervals)
            if (auto s = bad(c); !s.empty()) return s;
        for (const auto& c : enc.exclusions)
            if (auto s = bad(c); !s.empty()) return s;
        if (!enc.upper.contains(enc.lower())) return "lower not inside upper";
        return {};
    }

    void summarize(const SalphaEnclosure& enc, ExpectationResult& r) const {
        r.detail["lower"] = to_json(enc.lower());
        r.detail["upper"] = to_json(enc.upper);
        r.detail["exact"] = enc.exact;
    }

    void member(const Expectation& x, ExpectationResult& r) {
        const json& p = x.params;
        Rational y = rat(p["point"]);
        auto pts = rats(p["orbit"]);
        PeriodicOrbit orbit = orbit_of_periodic_point(f_, pts.front(), pts.size());
        if (std::set<Rational>(pts.begin(), pts.end()) != std::set<Rational>(orbit.points.begin(), orbit.points.end())) {
            r.detail["error"] = "listed points are not one periodic orbit";
            return;
        }
        std::string via = p.value("via", "");
        std::optional<Certificate> cert;
        if (via.empty() || via == "ExactTailCert")
            if (auto c = find_exact_tail(f_, y, orbit, depth(p), e_.budget.width_cap)) cert = *c;
        if (!cert && (via.empty() || via == "ContractionCert"))
            for (const auto& t : orbit.points)
                if (auto c = find_contraction(f_, y, t, orbit.least_period, depth(p), e_.budget.width_cap)) {
                    cert = *c;
                    break;
                }
        if (!cert) {
            r.detail["error"] = "no certificate found";
            return;
        }
        auto v = verify_certificate(f_, y, *cert);
        r.detail["certificate"] = to_json(*cert);
        r.detail["verified"] = v.ok;
        bool ok = v.ok;
        if (const auto* c = std::get_if<ContractionCert>(&*cert)) {
            if (p.contains("g_slope")) ok = ok && c->g_slope == rat(p["g_slope"]);
            if (p.contains("g_intercept")) ok = ok && c->g_intercept == rat(p["g_intercept"]);
        }
        r.pass = ok;
    }

    void excluded(const Expectation& x, ExpectationResult& r) {
        const json& p = x.params;
        Rational y = rat(p["point"]);
        auto pts = rats(p["points"]);
        if (p.contains("seed")) {
            auto res = avoided_region(f_, y, IntervalSet::parse(p["seed"].get<std::string>()), depth(p));
            if (!res.cert) {
                r.detail["rejected"] = res.rejection;
                return;
            }
            auto v = verify_certificate(f_, y, *res.cert);
            r.detail["certificate"] = to_json(Certificate(*res.cert));
            r.detail["verified"] = v.ok;
            r.pass = v.ok && std::all_of(pts.begin(), pts.end(),
                                         [&](const Rational& q) { return res.cert->excludes(q, f_.domain()); });
            return;
        }
        const auto& enc = enclosure(y);
        summarize(enc, r);
        auto failure = enclosure_failure(enc);
        if (!failure.empty()) r.detail["error"] = failure;
        r.pass = failure.empty() &&
                 std::none_of(pts.begin(), pts.end(), [&](const Rational& q) { return enc.upper.contains(q); });
    }

    void enclosure_exact(const Expectation& x, ExpectationResult& r) {
        Rational y = rat(x.params["point"]);
        IntervalSet want = IntervalSet::parse(x.expected.get<std::string>());
        const auto& enc = enclosure(y);
        summarize(enc, r);
        auto failure = enclosure_failure(enc);
        if (!failure.empty()) r.detail["error"] = failure;
        r.pass = failure.empty() && enc.exact && enc.upper == want && enc.lower() == want;
    }

    void cycle_valid(const Expectation& x, ExpectationResult& r) {
        auto check = check_cycle_of_intervals(f_, Interval::parse(x.params["base"].get<std::string>()),
                                              x.params["period"].get<std::size_t>());
        r.detail["valid"] = check.cycle.has_value();
        if (!check.cycle) r.detail["failure"] = check.failure;
        r.pass = check.cycle.has_value() == x.expected.get<bool>();
    }

    void property(const Expectation& x, ExpectationResult& r) {
        const std::string check = x.params["check"].get<std::string>();
        if (check == "fixed_points") {
            auto got = fixed_point_set(f_);
            r.detail["fixed_points"] = to_json(got);
            r.pass = got == IntervalSet::points(rats(x.expected));
        } else if (check == "sharkovsky") {
            const auto& enc = enclosure(rat(x.params["point"]));
            auto ps = enc.certified_periods();
            r.detail["certified_periods"] = ps;
            auto has = [&](std::size_t n) { return std::find(ps.begin(), ps.end(), n) != ps.end(); };
            r.pass = enclosure_failure(enc).empty() && has(3) && (has(1) || has(2));
        } else if (check == "lower_equals") {
            const auto& enc = enclosure(rat(x.params["point"]));
            summarize(enc, r);
            auto failure = enclosure_failure(enc);
            if (!failure.empty()) r.detail["error"] = failure;
            r.pass = failure.empty() && enc.lower() == IntervalSet::points(rats(x.expected));
        } else if (check == "overlap_count") {
            overlap_count(x, r);
        } else if (check == "nomax_chain") {
            nomax_chain(x, r);
        } else if (check == "chuxiong_properties") {
            auto rep = verify_chuxiong_properties(e_, x.params["level"].get<std::size_t>());
            json bullets = json::array();
            for (const auto& b : rep.checks) bullets.push_back({{"name", b.name}, {"pass", b.pass}, {"detail", b.detail}});
            r.detail["checks"] = bullets;
            r.pass = rep.all_pass();
        } else if (check == "chuxiong_approach") {
            chuxiong_approach(x, r);
        } else {
            r.detail["error"] = "unknown property check " + check;
        }
    }

    void overlap_count(const Expectation& x, ExpectationResult& r) {
        long den = x.params["denominator"].get<long>();
        const Interval& dom = f_.domain();
        IntervalSet middle(Interval(Rational(1, 3), Rational(2, 3)));
        std::set<std::string> distinct;
        bool sound = true;
        for (long k = 1; k < den; ++k) {
            Rational y = dom.lo() + dom.length() * Rational(k, den);
            const auto& enc = enclosure(y);
            sound = sound && enclosure_failure(enc).empty();
            if (enc.exact && enc.lower().contains(middle)) distinct.insert(enc.upper.str());
        }
        r.detail["enclosures"] = json(std::vector<std::string>(distinct.begin(), distinct.end()));
        r.detail["count"] = distinct.size();
        r.pass = sound && distinct.size() == x.expected.get<std::size_t>();
    }

    void nomax_chain(const Expectation& x, ExpectationResult& r) {
        std::size_t bands = x.params["bands"].get<std::size_t>();
        std::vector<IntervalSet> lowers;
        bool ok = true;
        json chain = json::array();
        for (std::size_t n = 1; n <= bands; ++n) {
            const auto& enc = enclosure(nomax_b(n));
            ok = ok && enclosure_failure(enc).empty();
            // The next fixed point is outside this enclosure but certified one band up.
            ok = ok && !enc.upper.contains(nomax_a(n + 1));
            if (!lowers.empty()) ok = ok && enc.lower().contains(lowers.back()) && enc.lower() != lowers.back();
            lowers.push_back(enc.lower());
            chain.push_back(to_json(enc.lower()));
        }
        Rational next = nomax_a(bands + 1);
        PeriodicOrbit fixed{{next}, 1};
        auto c = find_contraction(f_, nomax_b(bands + 1), next, 1, e_.budget.depth, e_.budget.width_cap);
        bool beyond = c && verify_certificate(f_, nomax_b(bands + 1), *c).ok;
        r.detail["lower_chain"] = chain;
        r.detail["next_member_certified"] = beyond;
        r.pass = ok && beyond;
    }

    void chuxiong_approach(const Expectation& x, ExpectationResult& r) {
        std::size_t levels = x.params["levels"].get<std::size_t>();
        std::size_t d = depth(x.params);
        const std::size_t N = e_.levels.size() - 1;
        const Rational xN = e_.levels[N].lo();
        json certs = json::array();
        bool ok = true;
        std::optional<Rational> last_gap;
        for (std::size_t n = 0; n < levels; ++n) {
            const Rational an = e_.levels[n].lo();
            auto c = find_contraction(f_, xN, an, std::size_t{1} << n, d, e_.budget.width_cap);
            bool good = c && verify_certificate(f_, xN, *c).ok && c->g_slope == Rational(1, 3);
            Rational gap = (xN - an).abs();
            if (last_gap) good = good && gap < *last_gap;
            last_gap = gap;
            ok = ok && good;
            certs.push_back({{"level", n},
                             {"a_n", an.str()},
                             {"gap", gap.str()},
                             {"certified", good},
                             {"certificate", c ? to_json(Certificate(*c)) : json(nullptr)}});
        }
        r.detail["x"] = xN.str();
        r.detail["levels"] = certs;
        r.pass = ok;
    }
};

}  // namespace

EntryResult run_entry(const CorpusEntry& entry) {
    Runner runner(entry);
    EntryResult out{entry.name, {}};
    for (const auto& x : entry.expectations) out.results.push_back(runner.run(x));
    return out;
}

std::vector<EntryResult> run_entries(const std::vector<std::string>& names, std::size_t jobs) {
    std::vector<CorpusEntry> entries;
    for (const auto& n : names) entries.push_back(build_entry(n));
    std::vector<EntryResult> results(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) results[i] = run_entry(entries[i]);
    };
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(entries.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace backlim
