#pragma once

#include "backlim/backlimits.hpp"

#include <functional>

namespace backlim::detail {

struct Connector {
    Rational z;
    std::size_t k;
};

/// First node, in BFS order of the untruncated backward tree of y, that lies
/// in target and satisfies accept. Only branches whose k-th image stays
/// inside target are explored, so the cost tracks the target rather than the
/// whole tree.
std::optional<Connector> search_connector(const PLMap& f, const Rational& y, const IntervalSet& target,
                                          const std::function<bool(const Rational&)>& accept,
                                          std::size_t depth, std::size_t node_budget, SearchStats* stats);

}  // namespace backlim::detail

namespace backlim::detail {

/// Membership search once transitivity and E are settled.
std::optional<CycleMembershipCert> membership_search(const PLMap& f, const Rational& y, const CycleOfIntervals& m,
                                                     const ExceptionalReport& report, std::size_t depth,
                                                     std::size_t node_budget, SearchStats* stats);

}  // namespace backlim::detail
