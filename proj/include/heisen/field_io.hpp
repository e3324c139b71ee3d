#pragma once

// Field files: a JSON document whose grid lives in plain fields and whose
// complex values are a base64 string of little-endian f64 (re, im) pairs.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>

#include "json.hpp"

#include "heisen/error.hpp"
#include "heisen/field.hpp"
#include "heisen/interval_set_json.hpp"

namespace heisen {

namespace detail {

inline std::string base64_encode(const std::string& bytes) {
    using namespace boost::archive::iterators;
    using It = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
    std::string out(It(bytes.begin()), It(bytes.end()));
    out.append((3 - bytes.size() % 3) % 3, '=');
    return out;
}

inline std::string base64_decode(std::string text) {
    using namespace boost::archive::iterators;
    using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
    std::size_t pad = 0;
    while (!text.empty() && text.back() == '=') {
        text.pop_back();
        ++pad;
    }
    if (pad > 2) throw Error(ErrorKind::ParseError, "bad base64 padding");
    for (char c : text)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/'))
            throw Error(ErrorKind::ParseError, "bad base64 character");
    std::string out(It(text.begin()), It(text.end()));
    // the decoder may emit a trailing partial byte from the padding bits
    const std::size_t expected = text.size() * 6 / 8;
    out.resize(expected);
    return out;
}

inline void put_f64(std::string& out, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

inline double get_f64(const std::string& in, std::size_t at) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace detail

inline nlohmann::json field_to_json(const Field& f) {
    using nlohmann::json;
    json cells = json::array(), rows = json::array();
    std::string bytes;
    for (std::size_t i = 0; i < f.cells().size(); ++i) {
        cells.push_back({f.cells()[i].lo, f.cells()[i].hi});
        rows.push_back(f.rows()[i].nodes);
        for (const auto& v : f.rows()[i].values) {
            detail::put_f64(bytes, v.real());
            detail::put_f64(bytes, v.imag());
        }
    }
    json doc{{"format", "heisen.field"},
             {"version", 1},
             {"support", to_json(f.support())["intervals"]},
             {"resolution", to_string(f.grid().resolution)},
             {"cells", cells},
             {"nodes", rows},
             {"values_base64", detail::base64_encode(bytes)}};
    if (const auto& u = f.uniform_t()) doc["uniform_t"] = {{"t_min", u->t_min}, {"dt", u->dt}, {"n_t", u->n_t}};
    return doc;
}

inline Field field_from_json(const nlohmann::json& doc) {
    try {
        if (doc.value("format", "") != "heisen.field")
            throw Error(ErrorKind::ParseError, "not a field file (format tag missing)");
        LambdaGrid grid;
        grid.support = set_from_json(nlohmann::json{{"intervals", doc.at("support")}});
        grid.resolution = parse_rational(doc.at("resolution").get<std::string>());
        const auto& cells = doc.at("cells");
        const auto& nodes = doc.at("nodes");
        if (cells.size() != nodes.size()) throw Error(ErrorKind::ParseError, "cells and nodes differ in length");
        const std::string bytes = detail::base64_decode(doc.at("values_base64").get<std::string>());
        std::size_t at = 0;
        std::vector<TProfile> rows;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            grid.cells.push_back({cells[i].at(0).get<double>(), cells[i].at(1).get<double>()});
            TProfile p;
            p.nodes = nodes[i].get<std::vector<double>>();
            const std::size_t n = p.nodes.empty() ? 0 : p.nodes.size() - 1;
            if (at + 16 * n > bytes.size()) throw Error(ErrorKind::ParseError, "value payload is too short");
            for (std::size_t k = 0; k < n; ++k, at += 16)
                p.values.emplace_back(detail::get_f64(bytes, at), detail::get_f64(bytes, at + 8));
            rows.push_back(std::move(p));
        }
        if (at != bytes.size()) throw Error(ErrorKind::ParseError, "value payload is too long");
        std::optional<UniformT> u;
        if (doc.contains("uniform_t")) {
            const auto& j = doc["uniform_t"];
            u = UniformT{j.at("t_min").get<double>(), j.at("dt").get<double>(), j.at("n_t").get<std::size_t>()};
        }
        return Field(std::move(grid), std::move(rows), u);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("field file: ") + e.what());
    }
}

inline void save_field(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out << field_to_json(f).dump(1) << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

inline Field load_field(const std::string& path) {
    const std::string text = read_text_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "field file: invalid JSON at " + detail::line_col(text, e.byte));
    }
    return field_from_json(doc);
}

/// One row per (lambda cell, t segment): lambda_lo,lambda_hi,t_lo,t_hi,abs2.
inline void write_abs2_csv(const Field& f, std::ostream& out) {
    out << "lambda_lo,lambda_hi,t_lo,t_hi,abs2\n";
    out.precision(17);
    for (std::size_t i = 0; i < f.cells().size(); ++i) {
        const auto& r = f.rows()[i];
        for (std::size_t k = 0; k < r.values.size(); ++k)
            out << f.cells()[i].lo << ',' << f.cells()[i].hi << ',' << r.nodes[k] << ',' << r.nodes[k + 1] << ','
                << std::norm(r.values[k]) << '\n';
    }
}

}  // namespace heisen
