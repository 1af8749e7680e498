#include "helpers.hpp"
#include "oracle.hpp"

using namespace testing;

namespace {

std::set<Rational> level(const BackwardTree& t, std::size_t k) {
    auto pts = t.level_points(k);
    return {pts.begin(), pts.end()};
}

PeriodicOrbit orbit(const PLMap& f, const char* x, std::size_t p) { return orbit_of_periodic_point(f, R(x), p); }

void check_tree_sound(const PLMap& f, const BackwardTree& t) {
    for (const auto& node : t.nodes) {
        if (!node.parent) continue;
        const auto& parent = t.nodes[*node.parent].value;
        if (!node.sampled) REQUIRE(parent.degenerate());
        // A sampled node maps onto the representative of its interval parent.
        for (const auto& x : {node.value.lo(), node.value.hi()}) {
            Rational v = f.eval(x);
            if (node.sampled) CHECK(parent.contains(v));
            else CHECK(v == parent.lo());
        }
    }
}

}  // namespace

TEST_SUITE("backlimits") {
    TEST_CASE("backward trees") {
        auto t5 = backward_tree(f5(), R("0"), 3, 10000);
        CHECK(level(t5, 0) == std::set<Rational>{R("0")});
        CHECK(level(t5, 1) == std::set<Rational>{R("5")});
        CHECK(level(t5, 2) == std::set<Rational>{R("1")});
        CHECK(level(t5, 3) == std::set<Rational>{R("0"), R("9/2")});
        auto t8 = backward_tree(f8(), R("0"), 3, 10000);
        CHECK(level(t8, 3) == std::set<Rational>{R("0"), R("24/5")});
        auto ti = backward_tree(identity01(), R("1/2"), 4, 10000);
        CHECK(ti.nodes.size() == 5);
        for (std::size_t k = 0; k <= 4; ++k) CHECK(ti.level_points(k) == Rs({"1/2"}));
        CHECK_THROWS_AS(backward_tree(f5(), R("6"), 2, 100), std::invalid_argument);
        auto capped = backward_tree(tent(), R("0"), 12, 50);
        CHECK(capped.any_truncated());
        CHECK_FALSE(t5.any_truncated());
    }

    TEST_CASE("tree soundness on corpus maps and a flat map") {
        for (const auto& name : corpus_names()) {
            CAPTURE(name);
            auto f = build_entry(name).map;
            auto t = backward_tree(f, f.domain().midpoint(), 8, 10000);
            check_tree_sound(f, t);
            auto om = oracle::from(f);
            auto brute = oracle::tree(om, f.domain().midpoint().raw(), 8);
            for (std::size_t k = 0; k <= 8 && !t.truncated[k]; ++k) {
                std::set<Rational> want;
                for (const auto& q : brute.levels[k]) want.insert(oracle::R(q));
                CHECK(level(t, k) == want);
            }
        }
        auto flat = dots_map("0", "1", {{"0", "0"}, {"1/4", "1/2"}, {"3/4", "1/2"}, {"1", "1"}});
        auto t = backward_tree(flat, R("1/2"), 3, 1000);
        CHECK(t.any_sampled());
        check_tree_sound(flat, t);
    }

    TEST_CASE("exact tails") {
        auto a = find_exact_tail(f5(), R("0"), orbit(f5(), "0", 3), 12);
        REQUIRE(a);
        CHECK(a->connector_z == R("0"));
        CHECK(a->connector_k == 0);
        auto b = find_exact_tail(f8(), R("0"), orbit(f8(), "0", 3), 12);
        REQUIRE(b);
        CHECK(b->connector_k == 0);
        CHECK_FALSE(find_exact_tail(f8(), R("0"), orbit(f8(), "1", 4), 12));
        // Oracle: no level of the full depth-12 tree touches the 4-orbit.
        auto brute = oracle::tree(oracle::from(f8()), 0, 12);
        CHECK(brute.complete);
        for (const auto& lv : brute.levels)
            for (const char* p : {"1", "5", "3", "7"}) CHECK(lv.count(R(p).raw()) == 0);
        // Off-orbit point reaching the orbit after some steps.
        auto c = find_exact_tail(f5(), R("5"), orbit(f5(), "0", 3), 12);
        REQUIRE(c);
        CHECK(verify_certificate(f5(), R("5"), *c));
    }

    TEST_CASE("contractions") {
        auto a = find_contraction(f5(), R("0"), R("2"), 2, 12);
        REQUIRE(a);
        CHECK(a->piece_word == std::vector<std::size_t>{2, 1});
        CHECK(a->g_slope == R("1/2"));
        CHECK(a->g_intercept == R("1"));
        CHECK(verify_certificate(f5(), R("0"), *a));

        auto b = find_contraction(f8(), R("0"), R("1"), 4, 12);
        REQUIRE(b);
        CHECK(b->piece_word == std::vector<std::size_t>{2, 0, 1, 0});
        CHECK(b->g_slope == R("1/5"));
        CHECK(b->g_intercept == R("4/5"));
        CHECK(verify_certificate(f8(), R("0"), *b));

        auto c = find_contraction(f8(), R("0"), R("14/3"), 1, 12);
        REQUIRE(c);
        CHECK(c->piece_word == std::vector<std::size_t>{1});
        CHECK(c->g_slope == R("-1/5"));
        CHECK(c->g_intercept == R("28/5"));
        CHECK(c->J.strictly_contains(R("14/3")));
        CHECK(verify_certificate(f8(), R("0"), *c));

        // The connector really reaches y, by the oracle.
        for (const auto* cert : {&*a, &*b, &*c}) {
            auto om = oracle::from(cert == &*a ? f5() : f8());
            CHECK(oracle::eval_n(om, cert->connector_z.raw(), cert->connector_k) == 0);
            CHECK(cert->J.contains(cert->connector_z));
            CHECK(cert->connector_z != cert->target_t);
        }

        // Slope-one cycles cannot contract: every point of [2,4] is 2-periodic under f5.
        CHECK_FALSE(find_contraction(f5(), R("0"), R("3"), 1, 12));
        CHECK_THROWS_AS(find_contraction(f5(), R("0"), R("7/2"), 1, 12), PreconditionError);
    }

    TEST_CASE("verifier examples") {
        auto a = find_contraction(f5(), R("0"), R("2"), 2, 12);
        REQUIRE(a);
        auto moved = *a;
        moved.connector_z = R("1/8");
        moved.connector_k = 5;
        auto v = verify_certificate(f5(), R("0"), moved);
        CHECK_FALSE(v.ok);
        CHECK(v.reason == "connector not in J");
        ExactTailCert tail{orbit(f5(), "0", 3), R("5"), 1};
        CHECK(verify_certificate(f5(), R("0"), tail));
        tail.connector_k = 2;
        CHECK_FALSE(verify_certificate(f5(), R("0"), tail));
    }

    TEST_CASE("avoidance") {
        auto a = avoided_region(f5(), R("0"), S("[2,4]"), 12);
        REQUIRE(a.cert);
        CHECK(a.cert->region.contains(S("[1/4,3/4];[2,4]")));
        CHECK(a.cert->excludes(R("3"), f5().domain()));
        CHECK(a.cert->upper(f5().domain()).contains(R("0")));
        CHECK_FALSE(a.cert->upper(f5().domain()).contains(R("3")));
        CHECK(verify_certificate(f5(), R("0"), *a.cert));

        auto b = avoided_region(f8(), R("0"), S("[3/2,5/2];[11/2,13/2]"), 12);
        REQUIRE(b.cert);
        CHECK(b.cert->excludes(R("2"), f8().domain()));
        CHECK(b.cert->excludes(R("6"), f8().domain()));
        CHECK(verify_certificate(f8(), R("0"), *b.cert));

        auto c = avoided_region(f5(), R("3"), S("[2,4]"), 12);
        CHECK_FALSE(c.cert);
        CHECK(c.rejection == "point inside seed");
        CHECK(avoided_region(f5(), R("0"), S("[0,1]"), 12).rejection == "point inside seed");
        CHECK(avoided_region(f5(), R("3"), S("[0,1]"), 12).rejection == "seed not invariant");
        CHECK(avoided_region(f5(), R("3"), S(""), 12).rejection == "empty seed");
        CHECK(avoided_region(f5(), R("3"), S("[4,6]"), 12).rejection == "seed outside domain");

        // No-max family: [0,a_2] is invariant and avoids b_1.
        auto nm = build_nomax(8).map;
        auto d = avoided_region(nm, R("3/4"), S("[0,1/2]"), 12);
        REQUIRE(d.cert);
        CHECK(d.cert->excludes(R("1/4"), nm.domain()));
        CHECK(d.cert->excludes(R("1/2"), nm.domain()));  // a_2 is never reached from b_1
        CHECK_FALSE(d.cert->excludes(R("1"), nm.domain()));
        CHECK_FALSE(d.cert->excludes(R("3/4"), nm.domain()));
        CHECK(verify_certificate(nm, R("3/4"), *d.cert));
    }

    TEST_CASE("cycle membership") {
        auto o = overlap();
        auto ms = *markov_partition(o);
        auto mid = *check_cycle_of_intervals(o, I("[1/3,2/3]"), 1).cycle;
        auto left = *check_cycle_of_intervals(o, I("[0,1/3]"), 1).cycle;
        auto a = cycle_membership(o, R("1/2"), mid, ms, 12);
        REQUIRE(a);
        CHECK(a->hop_z == R("1/2"));
        CHECK(a->hop_k == 0);
        auto b = cycle_membership(o, R("1/3"), mid, ms, 12);
        REQUIRE(b);
        CHECK(b->hop_z == R("5/9"));
        CHECK(b->hop_k == 1);
        CHECK(verify_certificate(o, R("1/3"), *b));
        CHECK_FALSE(cycle_membership(o, R("1/2"), left, ms, 12));

        auto f = f5();
        auto mf = *markov_partition(f);
        CHECK_THROWS_AS(cycle_membership(f, R("0"), *check_cycle_of_intervals(f, I("[2,4]"), 1).cycle, mf, 12),
                        PreconditionError);
    }

    TEST_CASE("enclosures") {
        auto e5 = salpha_enclosure(f5(), R("0"));
        CHECK(e5.lower().contains(IntervalSet::points(Rs({"0", "1", "5", "2", "4"}))));
        CHECK(S("[0,2];[4,5]").contains(e5.upper));
        CHECK_FALSE(e5.exact);

        auto eo = salpha_enclosure(overlap(), R("1/2"));
        CHECK(eo.lower() == S("[1/3,2/3]"));
        CHECK(eo.upper == S("[1/3,2/3]"));
        CHECK(eo.exact);

        auto nm = build_nomax(8);
        auto en = salpha_enclosure(nm.map, nomax_b(2), nm.budget);
        CHECK(en.lower() == IntervalSet::points(Rs({"1", "1/2"})));
        for (std::size_t m = 3; m <= 9; ++m) CHECK_FALSE(en.upper.contains(nomax_a(m)));
        CHECK_FALSE(en.upper.contains(R("0")));
        CHECK_THROWS_AS(salpha_enclosure(f5(), R("6")), std::invalid_argument);
    }

    TEST_CASE("enclosure consistency and orbit closure under certification") {
        for (const auto& name : {"f5", "f8", "overlap"}) {
            auto e = build_entry(name);
            EnclosureContext ctx(e.map, e.budget, e.proposed_cycles);
            auto om = oracle::from(e.map);
            for (int k = 0; k <= 6; ++k) {
                Rational y = e.map.domain().lo() + e.map.domain().length() * Rational(k, 6);
                auto enc = ctx.enclose(y);
                CAPTURE(name);
                CAPTURE(y.str());
                CHECK(enc.upper.contains(enc.lower()));
                if (enc.exact) CHECK(enc.lower() == enc.upper);
                for (const auto& c : enc.lower_points) {
                    CHECK(verify_certificate(e.map, y, c.cert));
                    for (std::size_t i = 0; i < c.orbit.points.size(); ++i) {
                        CHECK(enc.lower().contains(c.orbit.points[i]));
                        CHECK(oracle::eval(om, c.orbit.points[i].raw()) ==
                              c.orbit.points[(i + 1) % c.orbit.points.size()].raw());
                    }
                }
                for (const auto& c : enc.lower_intervals) CHECK(verify_certificate(e.map, y, c));
                for (const auto& c : enc.exclusions) CHECK(verify_certificate(e.map, y, c));
                // Same inputs, same enclosure.
                CHECK(to_json(ctx.enclose(y)) == to_json(enc));
            }
        }
    }

    TEST_CASE("beta upper bounds") {
        CHECK(beta_upper(overlap(), R("1/2")) == S("[1/3,2/3]"));
        for (const auto& name : {"f5", "f8", "overlap"}) {
            auto f = build_entry(name).map;
            CHECK(f.image(IntervalSet(f.domain())) == IntervalSet(f.domain()));
            for (int k = 0; k <= 4; ++k) {
                auto enc = salpha_enclosure(f, f.domain().lo() + f.domain().length() * Rational(k, 4));
                CHECK_FALSE(enc.beta_empty);
                CHECK_FALSE(enc.upper.empty());
            }
        }
        auto shrink = dots_map("0", "1", {{"0", "1/4"}, {"1", "3/4"}});
        auto enc = salpha_enclosure(shrink, R("0"), Budget{1, 100, 1});
        CHECK(enc.beta_empty);
        CHECK(enc.upper.empty());
        CHECK(enc.exact);
    }

    TEST_CASE("certificate json round trip") {
        std::vector<std::pair<PLMap, Certificate>> certs;
        certs.emplace_back(f5(), *find_contraction(f5(), R("0"), R("2"), 2, 12));
        certs.emplace_back(f5(), *find_exact_tail(f5(), R("0"), orbit(f5(), "0", 3), 12));
        certs.emplace_back(f5(), *avoided_region(f5(), R("0"), S("[2,4]"), 12).cert);
        auto o = overlap();
        certs.emplace_back(o, *cycle_membership(o, R("1/3"), *check_cycle_of_intervals(o, I("[1/3,2/3]"), 1).cycle,
                                                *markov_partition(o), 12));
        for (const auto& [f, c] : certs) {
            Rational y = std::holds_alternative<CycleMembershipCert>(c) ? R("1/3") : R("0");
            auto j = to_json(c);
            auto back = certificate_from_json(json::parse(j.dump()));
            CHECK(to_json(back) == j);
            CHECK(verify_certificate(f, y, back));
        }
        CHECK_THROWS_AS(certificate_from_json(json{{"type", "Nonsense"}}), ParseError);
        CHECK_THROWS_AS(certificate_from_json(json{{"type", "ExactTailCert"}}), ParseError);
    }
}
