#include "backlim/plmap.hpp"

#include <algorithm>

namespace backlim {

Interval Piece::image_of(const Interval& iv) const {
    Rational a = at(iv.lo());
    Rational b = at(iv.hi());
    if (b < a) std::swap(a, b);
    return Interval(a, b);
}

PLMap::PLMap(Interval domain, std::vector<Dot> dots) : domain_(std::move(domain)), dots_(std::move(dots)) {
    if (dots_.size() < 2) throw MapError("a map needs at least 2 dots");
    for (std::size_t i = 1; i < dots_.size(); ++i)
        if (!(dots_[i - 1].x < dots_[i].x))
            throw MapError("dot x-coordinates must be strictly increasing (at " + dots_[i].x.str() + ")");
    if (dots_.front().x != domain_.lo() || dots_.back().x != domain_.hi())
        throw MapError("first and last dots must sit at the domain endpoints");
    for (const auto& d : dots_)
        if (!domain_.contains(d.y)) throw MapError("dot value " + d.y.str() + " outside domain " + domain_.str());
    pieces_.reserve(dots_.size() - 1);
    for (std::size_t i = 0; i + 1 < dots_.size(); ++i) {
        const auto& p = dots_[i];
        const auto& q = dots_[i + 1];
        Rational slope = (q.y - p.y) / (q.x - p.x);
        pieces_.push_back(Piece{i, Interval(p.x, q.x), slope, p.y - slope * p.x});
    }
}

PLMap PLMap::identity(const Interval& domain) {
    if (domain.degenerate()) throw MapError("degenerate domain");
    return PLMap(domain, {{domain.lo(), domain.lo()}, {domain.hi(), domain.hi()}});
}

PLMap make_plmap(const Interval& domain, std::vector<Dot> dots) { return PLMap(domain, std::move(dots)); }

std::size_t PLMap::piece_at(const Rational& x) const {
    if (!domain_.contains(x)) throw std::out_of_range("point " + x.str() + " outside domain " + domain_.str());
    auto it = std::lower_bound(dots_.begin() + 1, dots_.end(), x,
                               [](const Dot& d, const Rational& v) { return d.x < v; });
    return static_cast<std::size_t>(it - dots_.begin()) - 1;
}

Rational PLMap::eval(const Rational& x) const {
    const auto& piece = pieces_[piece_at(x)];
    if (x == piece.span.lo()) return dots_[piece.index].y;
    if (x == piece.span.hi()) return dots_[piece.index + 1].y;
    return piece.at(x);
}

Rational PLMap::eval_n(Rational x, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) x = eval(x);
    return x;
}

IntervalSet PLMap::image(const IntervalSet& s) const {
    std::vector<Interval> out;
    for (const auto& iv : s.parts()) {
        for (std::size_t i = piece_at(iv.lo()); i < pieces_.size(); ++i) {
            const auto& piece = pieces_[i];
            if (iv.hi() < piece.span.lo()) break;
            if (auto part = piece.span.intersect(iv)) out.push_back(piece.image_of(*part));
        }
    }
    return IntervalSet::from(std::move(out));
}

IntervalSet PLMap::preimage(const IntervalSet& s) const {
    std::vector<Interval> out;
    for (const auto& piece : pieces_) {
        if (piece.constant()) {
            if (s.contains(piece.intercept)) out.push_back(piece.span);
            continue;
        }
        for (const auto& target : s.parts()) {
            Rational a = (target.lo() - piece.intercept) / piece.slope;
            Rational b = (target.hi() - piece.intercept) / piece.slope;
            if (b < a) std::swap(a, b);
            if (auto hit = piece.span.intersect(Interval(a, b))) out.push_back(*hit);
        }
    }
    return IntervalSet::from(std::move(out));
}

std::vector<PiecePreimage> PLMap::preimages_of(const Rational& v) const {
    std::vector<PiecePreimage> out;
    for (const auto& piece : pieces_) {
        if (piece.constant()) {
            if (piece.intercept == v) out.push_back({piece.index, piece.span});
            continue;
        }
        Rational x = (v - piece.intercept) / piece.slope;
        if (!piece.span.contains(x)) continue;
        bool seen = std::any_of(out.begin(), out.end(), [&](const PiecePreimage& p) { return p.where.contains(x); });
        if (!seen) out.push_back({piece.index, Interval::point(x)});
    }
    return out;
}

PLMap PLMap::simplified() const {
    std::vector<Dot> kept;
    kept.reserve(dots_.size());
    for (const auto& d : dots_) {
        if (kept.size() >= 2) {
            const auto& a = kept[kept.size() - 2];
            const auto& b = kept.back();
            if ((b.y - a.y) * (d.x - b.x) == (d.y - b.y) * (b.x - a.x)) kept.pop_back();
        }
        kept.push_back(d);
    }
    return PLMap(domain_, std::move(kept));
}

PLMap compose(const PLMap& f, const PLMap& g, std::size_t piece_cap) {
    if (!(f.domain() == g.domain())) throw MapError("compose: domain mismatch");
    // Breakpoints of f o g: g's dots plus every point g sends onto a dot of f.
    std::vector<Rational> xs;
    xs.reserve(g.dots().size() + f.dots().size());
    for (const auto& d : g.dots()) xs.push_back(d.x);
    for (const auto& d : f.dots()) {
        for (const auto& pre : g.preimages_of(d.x)) {
            xs.push_back(pre.where.lo());
            if (!pre.where.degenerate()) xs.push_back(pre.where.hi());
        }
        if (xs.size() > 2 * piece_cap + 2) throw PieceBudgetExceeded("composition exceeds piece budget");
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Dot> dots;
    dots.reserve(xs.size());
    for (auto& x : xs) {
        Rational y = f.eval(g.eval(x));
        dots.push_back({std::move(x), std::move(y)});
    }
    PLMap h = PLMap(f.domain(), std::move(dots)).simplified();
    if (h.piece_count() > piece_cap)
        throw PieceBudgetExceeded("composition has " + std::to_string(h.piece_count()) + " pieces, budget " +
                                  std::to_string(piece_cap));
    return h;
}

PLMap iterate(const PLMap& f, std::size_t n, std::size_t piece_cap) {
    PLMap result = PLMap::identity(f.domain());
    for (std::size_t i = 0; i < n; ++i) result = compose(f, result, piece_cap);
    return result;
}

}  // namespace backlim
