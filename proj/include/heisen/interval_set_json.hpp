#pragma once

// Set-spec files: {"intervals": [["lo","hi"], ...]} with "p/q" strings.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "heisen/error.hpp"
#include "heisen/interval_set.hpp"

namespace heisen {

using json = nlohmann::json;

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Rational rational_field(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw Error(ErrorKind::ParseError, where + ": expected a \"p/q\" string");
}

}  // namespace detail

inline IntervalUnion set_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("intervals"))
        throw Error(ErrorKind::ParseError, "set spec: missing field \"intervals\"");
    const json& arr = doc.at("intervals");
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, "intervals: expected an array");

    std::vector<Interval> pieces;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "intervals[" + std::to_string(i) + "]";
        const json& p = arr[i];
        if (!p.is_array() || p.size() != 2)
            throw Error(ErrorKind::ParseError, where + ": expected [lo, hi]");
        Interval iv{detail::rational_field(p[0], where + "[0]"),
                    detail::rational_field(p[1], where + "[1]")};
        if (!(iv.lo < iv.hi))
            throw Error(ErrorKind::EmptyInterval, where + ": " + to_string(iv) + " has lo >= hi");
        pieces.push_back(std::move(iv));
    }
    return IntervalUnion::normalize(std::move(pieces));
}

inline IntervalUnion parse_set_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError,
                    "set spec: invalid JSON at " + detail::line_col(text, e.byte));
    }
    return set_from_json(doc);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline IntervalUnion load_set_spec(const std::string& path) {
    return parse_set_spec(read_text_file(path));
}

inline json to_json(const Interval& iv) { return json::array({to_string(iv.lo), to_string(iv.hi)}); }

inline json to_json(const IntervalUnion& s) {
    json arr = json::array();
    for (const auto& p : s.pieces()) arr.push_back(to_json(p));
    return json{{"intervals", arr}};
}

inline json to_json(const WitnessPiece& w) {
    return json{{"piece", to_json(w.piece)}, {"exponent", w.exponent}, {"image", to_json(w.image)}};
}

/// `map` names the integer: "shift" for translations, "j" for dilations.
inline json to_json(const CongruenceResult& r, const std::string& map) {
    json pieces = json::array();
    for (const auto& w : r.pieces) {
        json e = to_json(w);
        e[map] = e["exponent"];
        e.erase("exponent");
        pieces.push_back(std::move(e));
    }
    json out{{"congruent", r.congruent}, {"pieces", pieces}, {"overlap", to_json(r.overlap)["intervals"]}};
    if (r.overlapping_pair) {
        json a = to_json(r.overlapping_pair->first), b = to_json(r.overlapping_pair->second);
        for (json* e : {&a, &b}) { (*e)[map] = (*e)["exponent"]; e->erase("exponent"); }
        out["overlapping_pair"] = json::array({a, b});
    }
    if (map == "j") out["uncovered"] = to_json(r.uncovered)["intervals"];
    return out;
}

}  // namespace heisen
