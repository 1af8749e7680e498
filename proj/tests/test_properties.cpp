#include "helpers.hpp"
#include "oracle.hpp"

using namespace testing;

namespace {

constexpr int kTrials = 10'000;

std::vector<std::string> maps() { return corpus_names(); }

IntervalSet random_set(std::mt19937_64& rng, const oracle::Map& m) {
    std::uniform_int_distribution<int> count(0, 3);
    std::vector<Interval> parts;
    for (int i = count(rng); i > 0; --i) {
        auto a = oracle::random_in(rng, m.lo, m.hi, 97), b = oracle::random_in(rng, m.lo, m.hi, 97);
        if (b < a) std::swap(a, b);
        parts.emplace_back(oracle::R(a), oracle::R(b));
    }
    return IntervalSet::from(parts);
}

}  // namespace

TEST_SUITE("properties") {
    TEST_CASE("composition and iteration agree with pointwise evaluation") {
        std::mt19937_64 rng(7);
        for (const auto& name : maps()) {
            CAPTURE(name);
            auto f = build_entry(name).map;
            auto om = oracle::from(f);
            auto ff = compose(f, f);
            auto f3 = iterate(f, 3);
            auto f5 = compose(iterate(f, 2), f3);
            for (int t = 0; t < kTrials; ++t) {
                auto x = oracle::random_in(rng, om.lo, om.hi);
                auto rx = oracle::R(x);
                REQUIRE(ff.eval(rx).raw() == oracle::eval_n(om, x, 2));
                REQUIRE(f3.eval(rx).raw() == oracle::eval_n(om, x, 3));
                REQUIRE(f5.eval(rx).raw() == oracle::eval_n(om, x, 5));
            }
        }
    }

    TEST_CASE("image and preimage laws") {
        std::mt19937_64 rng(8);
        for (const auto& name : maps()) {
            CAPTURE(name);
            auto f = build_entry(name).map;
            auto om = oracle::from(f);
            for (int t = 0; t < kTrials; ++t) {
                auto a = random_set(rng, om), b = random_set(rng, om);
                CAPTURE(a.str());
                CAPTURE(b.str());
                auto fa = f.image(a), pb = f.preimage(b);
                // adjunction
                REQUIRE(b.contains(fa) == pb.contains(a));
                // idempotence
                REQUIRE(a.unite(a) == a);
                REQUIRE(a.intersect(a) == a);
                // monotonicity
                auto ab = a.unite(b);
                REQUIRE(f.image(ab).contains(fa));
                REQUIRE(f.image(ab) == fa.unite(f.image(b)));
                REQUIRE(f.preimage(ab).contains(pb));
                // image of a point
                auto x = oracle::random_in(rng, om.lo, om.hi);
                REQUIRE(f.image(Interval::point(oracle::R(x))) == IntervalSet(Interval::point(oracle::R(oracle::eval(om, x)))));
            }
        }
    }

    TEST_CASE("avoidance certificates miss every brute-force preimage") {
        for (const auto& name : {"f5", "f8", "overlap", "chuxiong"}) {
            CAPTURE(name);
            auto e = build_entry(name);
            auto om = oracle::from(e.map);
            EnclosureContext ctx(e.map, e.budget, e.proposed_cycles);
            const auto& dom = e.map.domain();
            std::size_t certs = 0;
            for (int k : {0, 1, 3, 5}) {
                Rational y = dom.lo() + dom.length() * Rational(k, 6);
                CAPTURE(y.str());
                auto enc = ctx.enclose(y);
                auto tree = oracle::tree(om, y.raw(), 12, 20'000);
                for (const auto& a : enc.exclusions) {
                    ++certs;
                    for (const auto& level : tree.levels)
                        for (const auto& node : level) REQUIRE_FALSE(a.excludes(oracle::R(node), dom));
                }
            }
            CHECK(certs > 0);
        }
    }
}
