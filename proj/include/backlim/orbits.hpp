#pragma once

#include "backlim/plmap.hpp"

#include <optional>
#include <vector>

namespace backlim {

/// Exact periodic orbit, listed in temporal order from its least point.
struct PeriodicOrbit {
    std::vector<Rational> points;
    std::size_t least_period = 0;

    [[nodiscard]] bool contains(const Rational& x) const;
    friend bool operator==(const PeriodicOrbit&, const PeriodicOrbit&) = default;
};

/// An interval continuum of points fixed by f^period.
struct PeriodicContinuum {
    std::size_t period;
    IntervalSet set;
};

struct PeriodicStructure {
    std::vector<PeriodicOrbit> isolated_orbits;
    std::vector<PeriodicContinuum> fixed_intervals;
};

struct EventualPeriod {
    std::size_t preperiod;
    std::size_t period;
    friend bool operator==(const EventualPeriod&, const EventualPeriod&) = default;
};

inline constexpr std::size_t kDefaultPeriodCap = 64;

std::vector<Rational> forward_orbit(const PLMap& f, const Rational& x, std::size_t n);

/// nullopt means undetermined within cap iterations.
std::optional<EventualPeriod> eventual_period(const PLMap& f, const Rational& x,
                                              std::size_t cap = kDefaultPeriodCap);

/// Orbit of a periodic point x (throws std::invalid_argument if x does not
/// return within max_period steps).
PeriodicOrbit orbit_of_periodic_point(const PLMap& f, const Rational& x, std::size_t max_period);

IntervalSet fixed_point_set(const PLMap& f);
IntervalSet periodic_points(const PLMap& f, std::size_t n, std::size_t piece_cap = kDefaultPieceCap);
PeriodicStructure periodic_orbits(const PLMap& f, std::size_t n_max, std::size_t piece_cap = kDefaultPieceCap);

/// True iff m comes strictly before n in Sharkovsky's order
/// 3, 5, 7, ..., 2*3, 2*5, ..., 4*3, ..., 2^k, ..., 4, 2, 1.
bool sharkovsky_precedes(std::size_t m, std::size_t n);

}  // namespace backlim
