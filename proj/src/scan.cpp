#include "backlim/cli.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace backlim {

namespace {

// Calls visit(xs) for every strictly increasing x tuple 0 = x_0 < ... < x_{k-1} = D.
template <class F>
bool each_xs(std::size_t k, long D, F&& visit) {
    std::vector<long> xs(k);
    xs.front() = 0;
    xs.back() = D;
    auto rec = [&](auto&& self, std::size_t i, long from) -> bool {
        if (i + 1 == k) return visit(xs);
        for (long x = from; x <= D - static_cast<long>(k - 1 - i); ++x) {
            xs[i] = x;
            if (!self(self, i + 1, x + 1)) return false;
        }
        return true;
    };
    return rec(rec, 1, 1);
}

// Values at the integers, or empty if some integer has a non-integer image.
std::vector<long> integer_values(const std::vector<long>& xs, const std::vector<long>& ys, long D) {
    std::vector<long> g(D + 1);
    std::size_t piece = 0;
    for (long t = 0; t <= D; ++t) {
        while (t > xs[piece + 1]) ++piece;
        long run = xs[piece + 1] - xs[piece];
        long num = ys[piece] * run + (ys[piece + 1] - ys[piece]) * (t - xs[piece]);
        if (num % run != 0) return {};
        g[t] = num / run;
    }
    return g;
}

bool has_three_cycle(const std::vector<long>& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != static_cast<long>(i) && g[g[g[i]]] == static_cast<long>(i)) return true;
    return false;
}

json scan_one(const PLMap& f, const ScanOptions& opt) {
    Budget b = opt.budget;
    b.max_period = opt.max_period;
    EnclosureContext ctx(f, b);
    json points = json::array();
    bool any3 = false, lemma = true, gaps = false;
    for (long x = 0; x <= opt.domain; ++x) {
        auto ps = ctx.enclose(Rational(x)).certified_periods();
        auto has = [&](std::size_t n) { return std::binary_search(ps.begin(), ps.end(), n); };
        json entry = {{"x", std::to_string(x)}, {"periods", ps}};
        if (has(3)) {
            any3 = true;
            bool ok = has(1) || has(2);
            lemma = lemma && ok;
            std::vector<std::size_t> missing;
            for (std::size_t n = 1; n <= opt.max_period; ++n)
                if (!has(n) && !has(2 * n)) missing.push_back(n);
            gaps = gaps || !missing.empty();
            entry["lemma_consistent"] = ok;
            entry["uncertified_n"] = missing;
        }
        points.push_back(std::move(entry));
    }
    json dots = json::array();
    for (const auto& d : f.dots()) dots.push_back({d.x.str(), d.y.str()});
    // A gap only means no certificate was found, never that an orbit is absent.
    std::string status = !any3 ? "no_certified_period_3" : (lemma && !gaps ? "consistent" : "candidate");
    return {{"dots", dots}, {"map_digest", map_digest(f)}, {"points", points}, {"status", status}};
}

}  // namespace

std::vector<PLMap> scan_family(std::size_t dots, long domain, std::size_t limit) {
    std::vector<PLMap> out;
    if (limit == 0) return out;
    each_xs(dots, domain, [&](const std::vector<long>& xs) {
        std::vector<long> ys(dots, 0);
        while (true) {
            auto g = integer_values(xs, ys, domain);
            if (!g.empty() && has_three_cycle(g)) {
                std::vector<Dot> ds;
                for (std::size_t i = 0; i < dots; ++i) ds.push_back({Rational(xs[i]), Rational(ys[i])});
                out.push_back(make_plmap(Interval(Rational(0), Rational(domain)), std::move(ds)));
                if (out.size() == limit) return false;
            }
            std::size_t i = dots;
            while (i > 0 && ys[i - 1] == domain) ys[--i] = 0;
            if (i == 0) return true;
            ++ys[i - 1];
        }
    });
    return out;
}

json scan_maps(const ScanOptions& opt) {
    if (opt.dots < 2 || opt.dots > 6) throw std::invalid_argument("--dots must be in 2..6");
    if (opt.domain < 1 || opt.domain > 10) throw std::invalid_argument("--domain must be 0..D with 1 <= D <= 10");
    if (opt.dots > static_cast<std::size_t>(opt.domain) + 1) throw std::invalid_argument("more dots than integers");
    if (opt.max_period == 0) throw std::invalid_argument("--max-period must be positive");

    auto maps = scan_family(opt.dots, opt.domain, opt.limit);
    std::vector<json> rows(maps.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < maps.size(); i = next++) rows[i] = scan_one(maps[i], opt);
    };
    std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, std::max<std::size_t>(maps.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::size_t candidates = 0;
    json list = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i]["index"] = i;
        if (rows[i]["status"] == "candidate") ++candidates;
        list.push_back(std::move(rows[i]));
    }
    return {{"family", "integer dots, integers to integers, integer orbit of period 3"},
            {"scanned", maps.size()},
            {"candidates", candidates},
            {"maps", list}};
}

}  // namespace backlim
