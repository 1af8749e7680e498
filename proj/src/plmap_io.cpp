#include "backlim/plmap.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace backlim {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + ": rationals must be JSON strings");
    return Rational::parse(j.get<std::string>());
}

}  // namespace

PLMap parse_map(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed map JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("domain") || !doc.contains("dots"))
        throw ParseError("map JSON needs \"domain\" and \"dots\"");
    const auto& dom = doc["domain"];
    if (!dom.is_array() || dom.size() != 2) throw ParseError("\"domain\" must be [lo, hi]");
    Rational lo = rational_field(dom[0], "domain");
    Rational hi = rational_field(dom[1], "domain");
    if (hi <= lo) throw MapError("domain must be a non-degenerate interval");
    const auto& raw = doc["dots"];
    if (!raw.is_array()) throw ParseError("\"dots\" must be an array");
    std::vector<Dot> dots;
    for (const auto& d : raw) {
        if (!d.is_array() || d.size() != 2) throw ParseError("each dot must be [x, y]");
        dots.push_back({rational_field(d[0], "dot"), rational_field(d[1], "dot")});
    }
    return make_plmap(Interval(lo, hi), std::move(dots));
}

std::string serialize_map(const PLMap& f) {
    json dots = json::array();
    for (const auto& d : f.dots()) dots.push_back({d.x.str(), d.y.str()});
    json doc = {{"domain", {f.domain().lo().str(), f.domain().hi().str()}}, {"dots", dots}};
    return doc.dump();
}

PLMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read map file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_map(buf.str());
}

}  // namespace backlim
