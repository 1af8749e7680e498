#pragma once

#include "backlim/backlimits.hpp"

#include <json.hpp>

namespace backlim {

using nlohmann::json;

json to_json(const Rational& q);
json to_json(const Interval& iv);
json to_json(const IntervalSet& s);
json to_json(const std::vector<Rational>& xs);
json to_json(const PeriodicOrbit& o);
json to_json(const PeriodicStructure& ps);
json to_json(const CycleOfIntervals& m);
json to_json(const ExceptionalReport& r);
json to_json(const MarkovSystem& ms);
json to_json(const Certificate& c);
json to_json(const SalphaEnclosure& e);
json to_json(const BackwardTree& t);
json to_json(const SearchStats& s);

/// Inverse of to_json(Certificate); throws ParseError on malformed input.
Certificate certificate_from_json(const json& j);

}  // namespace backlim
