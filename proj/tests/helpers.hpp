#pragma once

#include "backlim/backlimits.hpp"
#include "backlim/corpus.hpp"

#include <doctest.h>

#include <string>
#include <vector>

namespace testing {

using namespace backlim;

inline Rational R(const char* s) { return Rational::parse(s); }
inline Interval I(const char* s) { return Interval::parse(s); }
inline IntervalSet S(const char* s) { return IntervalSet::parse(s); }

inline std::vector<Rational> Rs(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.push_back(R(x));
    return out;
}

inline PLMap dots_map(const char* lo, const char* hi, std::initializer_list<std::pair<const char*, const char*>> ds) {
    std::vector<Dot> v;
    for (auto [x, y] : ds) v.push_back({R(x), R(y)});
    return make_plmap(Interval(R(lo), R(hi)), std::move(v));
}

inline PLMap f5() { return build_f5().map; }
inline PLMap f8() { return build_f8().map; }
inline PLMap overlap() { return build_overlap().map; }
inline PLMap tent() { return dots_map("0", "1", {{"0", "0"}, {"1/2", "1"}, {"1", "0"}}); }
inline PLMap identity01() { return PLMap::identity(Interval(0, 1)); }

}  // namespace testing
