#include "backlim/backlimits.hpp"
#include "internal/search.hpp"

#include <algorithm>

namespace backlim {

bool BackwardTree::any_truncated() const {
    return std::any_of(truncated.begin(), truncated.end(), [](char c) { return c != 0; });
}

bool BackwardTree::any_sampled() const {
    return std::any_of(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.sampled; });
}

std::vector<Rational> BackwardTree::level_points(std::size_t level) const {
    std::vector<Rational> out;
    for (auto i : levels.at(level))
        if (nodes[i].value.degenerate()) out.push_back(nodes[i].value.lo());
    return out;
}

namespace {

std::vector<Rational> representatives(const Interval& iv) {
    if (iv.degenerate()) return {iv.lo()};
    return {iv.lo(), iv.midpoint(), iv.hi()};
}

}  // namespace

BackwardTree backward_tree(const PLMap& f, const Rational& y, std::size_t depth, std::size_t width_cap) {
    if (!f.domain().contains(y)) throw std::invalid_argument("point outside domain");
    BackwardTree tree{y, depth, width_cap, {}, {}, {}};
    tree.nodes.push_back(TreeNode{Interval::point(y), std::nullopt, 0, false});
    tree.levels.push_back({0});
    tree.truncated.push_back(0);
    for (std::size_t level = 1; level <= depth; ++level) {
        std::vector<std::size_t> next;
        bool cut = false;
        for (auto parent : tree.levels.back()) {
            const TreeNode node = tree.nodes[parent];
            bool from_interval = !node.value.degenerate();
            for (const auto& rep : representatives(node.value)) {
                for (const auto& pre : f.preimages_of(rep)) {
                    if (next.size() >= width_cap) {
                        cut = true;
                        break;
                    }
                    next.push_back(tree.nodes.size());
                    tree.nodes.push_back(TreeNode{pre.where, parent, pre.piece, node.sampled || from_interval});
                }
                if (cut) break;
            }
            if (cut) break;
        }
        tree.levels.push_back(std::move(next));
        tree.truncated.push_back(cut ? 1 : 0);
    }
    return tree;
}

namespace detail {

std::optional<Connector> search_connector(const PLMap& f, const Rational& y, const IntervalSet& target,
                                          const std::function<bool(const Rational&)>& accept,
                                          std::size_t depth, std::size_t node_budget, SearchStats* stats) {
    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    std::vector<IntervalSet> reach{target};  // reach[r] = f^r(target)
    std::optional<Rational> found;

    std::function<bool(const Rational&, std::size_t)> dfs = [&](const Rational& v, std::size_t r) -> bool {
        if (++st.nodes_visited > node_budget) {
            st.budget_hit = true;
            return false;
        }
        if (r == 0) {
            if (!accept(v)) return false;
            found = v;
            return true;
        }
        const IntervalSet& below = reach[r - 1];
        for (const auto& pre : f.preimages_of(v)) {
            if (pre.where.degenerate()) {
                if (below.contains(pre.where.lo()) && dfs(pre.where.lo(), r - 1)) return true;
            } else {
                const IntervalSet hits = below.intersect(IntervalSet(pre.where));
                for (const auto& part : hits.parts())
                    for (const auto& rep : representatives(part))
                        if (dfs(rep, r - 1)) return true;
            }
            if (st.budget_hit) return false;
        }
        return false;
    };

    for (std::size_t k = 0; k <= depth; ++k) {
        if (k > 0) {
            reach.push_back(f.image(reach.back()));
            if (reach[k] == reach[k - 1] && !reach[k].contains(y)) break;
        }
        if (!reach[k].contains(y)) continue;
        if (dfs(y, k)) return Connector{*found, k};
        if (st.budget_hit) break;
    }
    return std::nullopt;
}

}  // namespace detail
}  // namespace backlim
