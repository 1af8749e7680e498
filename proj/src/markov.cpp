#include "backlim/markov.hpp"

#include "backlim/orbits.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace backlim {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::NotApplicable: return "not_applicable";
    }
    return "?";
}

bool MarkovSystem::is_cut_point(const Rational& x) const {
    return std::binary_search(partition.begin(), partition.end(), x);
}

std::optional<std::vector<std::size_t>> MarkovSystem::cells_of(const IntervalSet& s) const {
    std::vector<std::size_t> cells;
    for (const auto& part : s.parts()) {
        if (part.degenerate()) return std::nullopt;
        auto lo = std::lower_bound(partition.begin(), partition.end(), part.lo());
        auto hi = std::lower_bound(partition.begin(), partition.end(), part.hi());
        if (lo == partition.end() || *lo != part.lo() || hi == partition.end() || *hi != part.hi())
            return std::nullopt;
        for (auto it = lo; it != hi; ++it) cells.push_back(static_cast<std::size_t>(it - partition.begin()));
    }
    return cells;
}

std::optional<MarkovSystem> markov_partition(const PLMap& f, std::size_t cap) {
    std::unordered_set<Rational> cuts;
    for (const auto& d : f.dots()) cuts.insert(d.x);
    for (const auto& d : f.dots()) {
        Rational cur = d.x;
        std::size_t steps = 0;
        while (true) {
            Rational next = f.eval(cur);
            if (!cuts.insert(next).second) break;
            if (++steps > cap) return std::nullopt;
            cur = std::move(next);
        }
    }
    std::vector<Rational> partition(cuts.begin(), cuts.end());
    std::sort(partition.begin(), partition.end());

    const std::size_t n = partition.size() - 1;
    MarkovSystem ms{f, std::move(partition), std::vector<std::vector<char>>(n, std::vector<char>(n, 0)),
                    std::vector<char>(n, 0), true};
    for (const auto& piece : f.pieces())
        if (piece.slope.abs() <= Rational(1)) ms.expanding = false;
    for (std::size_t i = 0; i < n; ++i) {
        Interval cell = ms.cell(i);
        const auto& piece = f.pieces()[f.piece_at(cell.midpoint())];
        ms.cell_expanding[i] = piece.slope.abs() > Rational(1);
        Interval img = piece.image_of(cell);
        for (std::size_t j = 0; j < n; ++j)
            ms.matrix[i][j] = (!img.degenerate() && img.contains(ms.cell(j))) ? 1 : 0;
    }
    return ms;
}

CycleCheck check_cycle_of_intervals(const PLMap& f, const Interval& base, std::size_t period) {
    if (base.degenerate()) return {std::nullopt, "base interval is degenerate"};
    if (period == 0) return {std::nullopt, "period must be >= 1"};
    if (!f.domain().contains(base)) return {std::nullopt, "base interval outside domain"};
    std::vector<Interval> iterates{base};
    for (std::size_t i = 1; i <= period; ++i) iterates.push_back(f.image(iterates.back()).hull());
    for (std::size_t i = 0; i < period; ++i)
        for (std::size_t j = i + 1; j < period; ++j)
            if (iterates[i].intersect(iterates[j]))
                return {std::nullopt, "iterates not pairwise disjoint: f^" + std::to_string(i) + "(K)=" +
                                          iterates[i].str() + " meets f^" + std::to_string(j) +
                                          "(K)=" + iterates[j].str()};
    if (!(iterates[period] == base))
        return {std::nullopt, "f^" + std::to_string(period) + "(K)=" + iterates[period].str() + " != K=" + base.str()};
    iterates.pop_back();
    return {CycleOfIntervals{base, period, IntervalSet::from(std::move(iterates))}, {}};
}

OrbitClosure orbit_closure(const PLMap& f, const Interval& u, std::size_t cap) {
    IntervalSet s(u);
    for (std::size_t i = 0; i < cap; ++i) {
        IntervalSet next = s.unite(f.image(s));
        if (next == s) return {std::move(s), true};
        s = std::move(next);
    }
    return {std::move(s), false};
}

namespace {

std::vector<std::size_t> aligned_cells(const MarkovSystem& ms, const CycleOfIntervals& m) {
    auto cells = ms.cells_of(m.components);
    if (!cells) throw std::invalid_argument("cycle components " + m.components.str() + " are not unions of cells");
    return *cells;
}

// BFS distances inside the sub-graph; -1 when unreachable.
std::vector<long> reach(const MarkovSystem& ms, const std::vector<std::size_t>& cells, bool reverse) {
    std::vector<long> dist(cells.size(), -1);
    std::deque<std::size_t> queue{0};
    dist[0] = 0;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < cells.size(); ++v) {
            char edge = reverse ? ms.matrix[cells[v]][cells[u]] : ms.matrix[cells[u]][cells[v]];
            if (edge && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

bool all_expanding(const MarkovSystem& ms, const std::vector<std::size_t>& cells) {
    return std::all_of(cells.begin(), cells.end(), [&](std::size_t c) { return ms.cell_expanding[c] != 0; });
}

bool strongly_connected(const MarkovSystem& ms, const std::vector<std::size_t>& cells) {
    auto fwd = reach(ms, cells, false);
    auto bwd = reach(ms, cells, true);
    return std::all_of(fwd.begin(), fwd.end(), [](long d) { return d >= 0; }) &&
           std::all_of(bwd.begin(), bwd.end(), [](long d) { return d >= 0; });
}

}  // namespace

Verdict is_transitive(const MarkovSystem& ms, const CycleOfIntervals& m) {
    auto cells = aligned_cells(ms, m);
    if (!all_expanding(ms, cells)) return Verdict::NotApplicable;
    return strongly_connected(ms, cells) ? Verdict::Yes : Verdict::No;
}

Verdict is_mixing(const MarkovSystem& ms, const CycleOfIntervals& m) {
    auto cells = aligned_cells(ms, m);
    if (!all_expanding(ms, cells)) return Verdict::NotApplicable;
    if (!strongly_connected(ms, cells)) return Verdict::No;
    // Irreducible matrix is primitive iff the gcd of its cycle lengths is 1.
    auto level = reach(ms, cells, false);
    long g = 0;
    for (std::size_t u = 0; u < cells.size(); ++u)
        for (std::size_t v = 0; v < cells.size(); ++v)
            if (ms.matrix[cells[u]][cells[v]]) g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
    return g == 1 ? Verdict::Yes : Verdict::No;
}

ExceptionalReport exceptional_set(const PLMap& f, const MarkovSystem& ms, const CycleOfIntervals& m,
                                  std::size_t cap) {
    ExceptionalReport report{m, {}, {}, {}, {}};
    std::vector<Rational> endpoints;
    for (const auto& part : m.components.parts()) {
        endpoints.push_back(part.lo());
        endpoints.push_back(part.hi());
    }
    std::vector<Rational> candidates = endpoints;
    for (const auto& c : ms.partition) {
        if (!m.components.contains(c)) continue;
        auto ep = eventual_period(f, c, cap);
        if (ep && ep->preperiod == 0) candidates.push_back(c);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto interior_point = [&](const Interval& iv) {
        // A point of iv strictly inside a cell.
        auto next = std::upper_bound(ms.partition.begin(), ms.partition.end(), iv.lo());
        Rational hi = (next == ms.partition.end()) ? iv.hi() : min(iv.hi(), *next);
        return (iv.lo() + hi) / Rational(2);
    };

    for (const auto& c : candidates) {
        std::unordered_map<Rational, std::size_t> depth{{c, 0}};
        std::vector<Rational> frontier{c};
        std::optional<AccessWitness> witness;
        bool closed = false;
        for (std::size_t step = 1; step <= cap && !witness; ++step) {
            std::vector<Rational> next;
            for (const auto& p : frontier) {
                for (const auto& pre : f.preimages_of(p)) {
                    const IntervalSet hits = m.components.intersect(IntervalSet(pre.where));
                    for (const auto& part : hits.parts()) {
                        Rational x = part.degenerate() ? part.lo() : interior_point(part);
                        if (!ms.is_cut_point(x)) {
                            witness = AccessWitness{c, x, step};
                            break;
                        }
                        if (depth.try_emplace(x, step).second) next.push_back(x);
                    }
                    if (witness) break;
                }
                if (witness) break;
            }
            if (!witness && next.empty()) {
                closed = true;
                break;
            }
            frontier = std::move(next);
        }
        bool is_endpoint = std::find(endpoints.begin(), endpoints.end(), c) != endpoints.end();
        if (witness) {
            report.witnesses.push_back(*witness);
            if (is_endpoint) report.accessible_endpoints.push_back(c);
        } else if (closed) {
            report.exceptional.push_back(c);
        } else {
            report.undecided.push_back(c);
        }
    }
    return report;
}

std::vector<CycleOfIntervals> discover_cycles(const PLMap& f, const MarkovSystem& ms) {
    const std::size_t n = ms.cell_count();
    // Tarjan's strongly connected components.
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    long counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t u) {
        index[u] = low[u] = counter++;
        stack.push_back(u);
        on_stack[u] = 1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!ms.matrix[u][v]) continue;
            if (index[v] < 0) {
                visit(v);
                low[u] = std::min(low[u], low[v]);
            } else if (on_stack[v]) {
                low[u] = std::min(low[u], index[v]);
            }
        }
        if (low[u] == index[u]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp.push_back(w);
            } while (w != u);
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
        }
    };
    for (std::size_t u = 0; u < n; ++u)
        if (index[u] < 0) visit(u);
    std::sort(components.begin(), components.end());

    std::vector<CycleOfIntervals> out;
    for (const auto& comp : components) {
        if (comp.size() == 1 && !ms.matrix[comp[0]][comp[0]]) continue;
        std::vector<Interval> cells;
        for (auto c : comp) cells.push_back(ms.cell(c));
        IntervalSet u = IntervalSet::from(std::move(cells));
        auto check = check_cycle_of_intervals(f, u.parts().front(), u.size());
        if (check.cycle && check.cycle->components == u) out.push_back(std::move(*check.cycle));
    }
    return out;
}

}  // namespace backlim
