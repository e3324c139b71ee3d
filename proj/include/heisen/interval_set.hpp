#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisen/error.hpp"
#include "heisen/rational.hpp"

namespace heisen {

/// Half-open interval [lo, hi) with exact endpoints.
struct Interval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

inline std::string to_string(const Interval& iv) {
    return "[" + to_string(iv.lo) + "," + to_string(iv.hi) + ")";
}

/// Finite disjoint union of half-open intervals, kept sorted and merged.
class IntervalUnion {
public:
    IntervalUnion() = default;

    /// Canonicalizes arbitrary pieces. Throws EmptyInterval if some lo >= hi.
    static IntervalUnion normalize(std::vector<Interval> pieces) {
        for (const auto& p : pieces)
            if (!(p.lo < p.hi))
                throw Error(ErrorKind::EmptyInterval, "piece " + to_string(p) + " has lo >= hi");
        return from_valid(std::move(pieces));
    }

    static IntervalUnion single(const Rational& lo, const Rational& hi) {
        return normalize({{lo, hi}});
    }

    const std::vector<Interval>& pieces() const noexcept { return pieces_; }
    bool empty() const noexcept { return pieces_.empty(); }
    std::size_t size() const noexcept { return pieces_.size(); }

    Rational lower() const { return pieces_.empty() ? Rational(0) : pieces_.front().lo; }
    Rational upper() const { return pieces_.empty() ? Rational(0) : pieces_.back().hi; }

    bool contains(const Rational& x) const {
        for (const auto& p : pieces_)
            if (p.lo <= x && x < p.hi) return true;
        return false;
    }

    bool operator==(const IntervalUnion&) const = default;

    // Same as normalize, but silently drops empty pieces (used internally
    // where clipping may produce them).
    static IntervalUnion from_valid(std::vector<Interval> pieces) {
        std::erase_if(pieces, [](const Interval& p) { return !(p.lo < p.hi); });
        std::sort(pieces.begin(), pieces.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        IntervalUnion out;
        for (auto& p : pieces) {
            if (!out.pieces_.empty() && p.lo <= out.pieces_.back().hi) {
                if (out.pieces_.back().hi < p.hi) out.pieces_.back().hi = p.hi;
            } else {
                out.pieces_.push_back(std::move(p));
            }
        }
        return out;
    }

private:
    std::vector<Interval> pieces_;
};

inline std::string to_string(const IntervalUnion& s) {
    if (s.empty()) return "{}";
    std::string out;
    for (const auto& p : s.pieces()) {
        if (!out.empty()) out += " u ";
        out += to_string(p);
    }
    return out;
}

/// The Shannon set [-1,-1/2) u [1/2,1).
inline IntervalUnion shannon_set() {
    return IntervalUnion::normalize({{Rational(-1), Rational(-1, 2)}, {Rational(1, 2), Rational(1)}});
}

inline Rational measure(const IntervalUnion& s) {
    Rational m = 0;
    for (const auto& p : s.pieces()) m += p.length();
    return m;
}

inline IntervalUnion translate(const IntervalUnion& s, const Rational& k) {
    std::vector<Interval> out;
    out.reserve(s.size());
    for (const auto& p : s.pieces()) out.push_back({p.lo + k, p.hi + k});
    return IntervalUnion::from_valid(std::move(out));
}

inline IntervalUnion dilate(const IntervalUnion& s, std::int64_t j) {
    const Rational f = pow2(j);
    std::vector<Interval> out;
    out.reserve(s.size());
    for (const auto& p : s.pieces()) out.push_back({p.lo * f, p.hi * f});
    return IntervalUnion::from_valid(std::move(out));
}

inline IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> all = a.pieces();
    all.insert(all.end(), b.pieces().begin(), b.pieces().end());
    return IntervalUnion::from_valid(std::move(all));
}

inline IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> out;
    const auto& pa = a.pieces();
    const auto& pb = b.pieces();
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        const Rational& lo = std::max(pa[i].lo, pb[j].lo);
        const Rational& hi = std::min(pa[i].hi, pb[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (pa[i].hi < pb[j].hi) ++i;
        else ++j;
    }
    return IntervalUnion::from_valid(std::move(out));
}

/// a \ b
inline IntervalUnion subtract(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> out;
    for (const auto& p : a.pieces()) {
        Rational cur = p.lo;
        for (const auto& q : b.pieces()) {
            if (q.hi <= cur) continue;
            if (q.lo >= p.hi) break;
            if (cur < q.lo) out.push_back({cur, q.lo});
            cur = std::max(cur, q.hi);
            if (cur >= p.hi) break;
        }
        if (cur < p.hi) out.push_back({cur, p.hi});
    }
    return IntervalUnion::from_valid(std::move(out));
}

inline Rational overlap_measure(const IntervalUnion& a, const IntervalUnion& b) {
    return measure(intersect(a, b));
}

inline bool is_subset(const IntervalUnion& a, const IntervalUnion& b) {
    return subtract(a, b).empty();
}

/// Part of s on the chosen half-line: (0,inf) for sign > 0, (-inf,0) otherwise.
inline IntervalUnion half_line(const IntervalUnion& s, int sign) {
    std::vector<Interval> out;
    for (const auto& p : s.pieces()) {
        if (sign > 0 && p.hi > 0) out.push_back({std::max(p.lo, Rational(0)), p.hi});
        if (sign < 0 && p.lo < 0) out.push_back({p.lo, std::min(p.hi, Rational(0))});
    }
    return IntervalUnion::from_valid(std::move(out));
}

/// Sum of ln(hi/lo) over the pieces on one half-line (absolute values on the
/// negative side). The ratios are multiplied exactly before the logarithm.
inline double log_measure(const IntervalUnion& s, int sign) {
    Rational ratio = 1;
    const IntervalUnion side = half_line(s, sign);
    for (const auto& p : side.pieces()) {
        if (p.lo == 0 || p.hi == 0)
            throw Error(ErrorKind::TouchesZero, "piece " + to_string(p) + " touches 0");
        ratio *= sign > 0 ? p.hi / p.lo : p.lo / p.hi;
    }
    // log(num) - log(den) keeps precision when the product has huge terms.
    const BigInt& n = numerator(ratio);
    const BigInt& d = denominator(ratio);
    if (msb(n) < 1000 && msb(d) < 1000) return std::log(to_double(ratio));
    const auto big_log = [](const BigInt& v) {
        const unsigned shift = msb(v) > 60 ? msb(v) - 60 : 0;
        return std::log((v >> shift).convert_to<double>()) + shift * std::log(2.0);
    };
    return big_log(n) - big_log(d);
}

// ---------------------------------------------------------------------------
// Congruence tests

/// One sub-piece of I, the integer (shift k or exponent j) applied to it, and
/// its image.
struct WitnessPiece {
    Interval piece;
    std::int64_t exponent;
    Interval image;
};

struct CongruenceResult {
    bool congruent = false;
    /// Sub-pieces partitioning I with their maps. Present in both outcomes.
    std::vector<WitnessPiece> pieces;
    /// On failure: two witness entries whose images overlap, if any do.
    std::optional<std::pair<WitnessPiece, WitnessPiece>> overlapping_pair;
    /// Points hit by more than one image.
    IntervalUnion overlap;
    /// Dilation only: the part of the Shannon set left uncovered.
    IntervalUnion uncovered;
};

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt floor(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

/// n with 2^n <= x < 2^(n+1), x > 0.
inline std::int64_t floor_log2(const Rational& x) {
    std::int64_t n = static_cast<std::int64_t>(msb(numerator(x))) -
                     static_cast<std::int64_t>(msb(denominator(x)));
    // off by at most one
    if (pow2(n) > x) --n;
    else if (pow2(n + 1) <= x) ++n;
    return n;
}

// Sorts witness images and records overlaps plus the first overlapping pair.
inline void find_overlaps(CongruenceResult& r, std::vector<WitnessPiece> pieces) {
    std::sort(pieces.begin(), pieces.end(),
              [](const WitnessPiece& a, const WitnessPiece& b) { return a.image.lo < b.image.lo; });
    std::vector<Interval> overlaps;
    // Sweep: keep the piece reaching furthest right so far.
    for (std::size_t i = 1, reach = 0; i < pieces.size(); ++i) {
        const auto& prev = pieces[reach];
        const auto& cur = pieces[i];
        if (cur.image.lo < prev.image.hi) {
            overlaps.push_back({cur.image.lo, std::min(cur.image.hi, prev.image.hi)});
            if (!r.overlapping_pair) r.overlapping_pair = {prev, cur};
        }
        if (cur.image.hi > prev.image.hi) reach = i;
    }
    r.overlap = IntervalUnion::from_valid(std::move(overlaps));
}

}  // namespace detail

/// Decides whether the integer translates of s are pairwise disjoint, i.e.
/// whether s is translation congruent with a subset of [0,1).
inline CongruenceResult is_translation_congruent_unit(const IntervalUnion& s) {
    CongruenceResult r;
    for (const auto& p : s.pieces()) {
        BigInt n = detail::floor(p.lo);
        Rational cur = p.lo;
        while (cur < p.hi) {
            const Rational next = std::min(p.hi, Rational(n + 1));
            const Rational k = Rational(-n);
            r.pieces.push_back({{cur, next}, static_cast<std::int64_t>(-n), {cur + k, next + k}});
            cur = next;
            ++n;
        }
    }
    detail::find_overlaps(r, r.pieces);
    r.congruent = r.overlap.empty();
    return r;
}

/// Decides whether s is dilation congruent (by powers of 2) with the Shannon
/// set, separately on each half-line. Throws TouchesZero if a piece has 0 as
/// an endpoint or interior point.
inline CongruenceResult is_dilation_congruent_shannon(const IntervalUnion& s) {
    CongruenceResult r;
    for (const auto& p : s.pieces())
        if (p.lo <= 0 && p.hi >= 0)
            throw Error(ErrorKind::TouchesZero, "piece " + to_string(p) + " reaches 0");

    for (const auto& p : s.pieces()) {
        const bool neg = p.hi <= 0;
        // Work with |.|: a negative piece [lo,hi) is the mirror of (|hi|,|lo|],
        // and dyadic blocks [-2^(n+1),-2^n) are split at -2^n.
        Rational cur = p.lo;
        while (cur < p.hi) {
            std::int64_t n;
            Rational next;
            if (!neg) {
                n = detail::floor_log2(cur);
                next = std::min(p.hi, pow2(n + 1));
            } else {
                // block [-2^(n+1), -2^n) containing cur
                n = detail::floor_log2(-cur);
                if (pow2(n) == -cur) --n;
                next = std::min(p.hi, -pow2(n));
            }
            const std::int64_t j = -n - 1;
            const Rational f = pow2(j);
            r.pieces.push_back({{cur, next}, j, {cur * f, next * f}});
            cur = next;
        }
    }
    detail::find_overlaps(r, r.pieces);

    std::vector<Interval> images;
    for (const auto& w : r.pieces) images.push_back(w.image);
    r.uncovered = subtract(shannon_set(), IntervalUnion::from_valid(std::move(images)));
    r.congruent = r.overlap.empty() && r.uncovered.empty();
    return r;
}

/// Both congruence tests. Throws OutsideBand unless s lies in [-1,1].
inline bool is_heisenberg_wavelet_set(const IntervalUnion& s) {
    if (!s.empty() && (s.lower() < -1 || s.upper() > 1))
        throw Error(ErrorKind::OutsideBand, to_string(s) + " is not inside [-1,1]");
    return is_translation_congruent_unit(s).congruent && is_dilation_congruent_shannon(s).congruent;
}

}  // namespace heisen
