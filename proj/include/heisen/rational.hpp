#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "heisen/error.hpp"

namespace heisen {

/// Exact rational number, always in lowest terms with a positive denominator.
/// Expression templates are off so values behave like plain value types.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// 2^j as an exact rational (j may be negative).
inline Rational pow2(std::int64_t j) {
    BigInt p = 1;
    p <<= static_cast<unsigned>(j < 0 ? -j : j);
    return j < 0 ? Rational(BigInt(1), p) : Rational(p);
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Parses "p/q" or "p" (optional leading sign on p). Throws ParseError.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);

    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        negative = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!detail::all_digits(num) || (slash != std::string_view::npos && !detail::all_digits(den)))
        throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");

    BigInt p{std::string(num)};
    if (negative) p = -p;
    BigInt q = den.empty() ? BigInt(1) : BigInt{std::string(den)};
    if (q == 0)
        throw Error(ErrorKind::ParseError,
                    "malformed rational '" + std::string(text) + "' (zero denominator)");
    return Rational(p, q);
}

}  // namespace heisen
