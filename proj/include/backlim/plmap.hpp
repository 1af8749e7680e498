#pragma once

#include "backlim/interval_set.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace backlim {

/// Invalid map construction (non-increasing x, y outside domain, too few dots).
class MapError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact composition would exceed the configured piece budget.
class PieceBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dot {
    Rational x;
    Rational y;
    friend bool operator==(const Dot&, const Dot&) = default;
};

/// Affine piece of a map: f(x) = slope * x + intercept on span.
struct Piece {
    std::size_t index;
    Interval span;
    Rational slope;
    Rational intercept;

    [[nodiscard]] Rational at(const Rational& x) const { return slope * x + intercept; }
    [[nodiscard]] bool constant() const { return slope.is_zero(); }
    /// Affine image of a sub-interval of the span.
    [[nodiscard]] Interval image_of(const Interval& iv) const;

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// A preimage produced by one piece: a single point, or the whole span of a
/// constant piece.
struct PiecePreimage {
    std::size_t piece;
    Interval where;
};

inline constexpr std::size_t kDefaultPieceCap = 1'000'000;

/// Continuous piecewise-linear self-map of a compact interval, affine between
/// consecutive dots.
class PLMap {
public:
    PLMap(Interval domain, std::vector<Dot> dots);
    static PLMap identity(const Interval& domain);

    [[nodiscard]] const Interval& domain() const { return domain_; }
    [[nodiscard]] const std::vector<Dot>& dots() const { return dots_; }
    [[nodiscard]] const std::vector<Piece>& pieces() const { return pieces_; }
    [[nodiscard]] std::size_t piece_count() const { return pieces_.size(); }

    /// Index of the first piece whose span contains x.
    [[nodiscard]] std::size_t piece_at(const Rational& x) const;
    [[nodiscard]] Rational eval(const Rational& x) const;
    [[nodiscard]] Rational eval_n(Rational x, std::size_t n) const;

    [[nodiscard]] IntervalSet image(const IntervalSet& s) const;
    [[nodiscard]] IntervalSet image(const Interval& iv) const { return image(IntervalSet(iv)); }
    [[nodiscard]] IntervalSet preimage(const IntervalSet& s) const;
    /// Preimages of a single value, one entry per piece that hits it, in piece
    /// order; coincident points at shared dots are reported once (lowest piece).
    [[nodiscard]] std::vector<PiecePreimage> preimages_of(const Rational& v) const;

    /// Same function with collinear interior dots removed.
    [[nodiscard]] PLMap simplified() const;

    friend bool operator==(const PLMap&, const PLMap&) = default;

private:
    Interval domain_;
    std::vector<Dot> dots_;
    std::vector<Piece> pieces_;
};

/// Validating constructor; throws MapError.
PLMap make_plmap(const Interval& domain, std::vector<Dot> dots);

/// h = f o g. Requires equal domains.
PLMap compose(const PLMap& f, const PLMap& g, std::size_t piece_cap = kDefaultPieceCap);
/// n-fold composition; n = 0 gives the identity.
PLMap iterate(const PLMap& f, std::size_t n, std::size_t piece_cap = kDefaultPieceCap);

/// Map file: {"domain":[lo,hi],"dots":[[x,y],...]} with rationals as strings.
PLMap parse_map(std::string_view json_text);
std::string serialize_map(const PLMap& f);
PLMap load_map(const std::string& path);

}  // namespace backlim
