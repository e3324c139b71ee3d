#pragma once

// Independent reference procedures for the set algebra. They share only the
// Rational type with the library.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "heisen/rational.hpp"

namespace oracle {

using heisen::BigInt;
using heisen::Rational;
using Pieces = std::vector<std::pair<Rational, Rational>>;

// Union by sweeping the elementary segments between sorted endpoints and
// testing each midpoint for membership.
inline Pieces sweep_union(const Pieces& in) {
    std::set<Rational> pts;
    for (const auto& [lo, hi] : in) {
        pts.insert(lo);
        pts.insert(hi);
    }
    std::vector<Rational> p(pts.begin(), pts.end());
    Pieces out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const Rational mid = (p[i] + p[i + 1]) / 2;
        bool covered = false;
        for (const auto& [lo, hi] : in) covered |= (lo <= mid && mid < hi);
        if (!covered) continue;
        if (!out.empty() && out.back().second == p[i]) out.back().second = p[i + 1];
        else out.emplace_back(p[i], p[i + 1]);
    }
    return out;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Largest number of pieces' integer translates covering a point of [0,1):
// refine to the common denominator D and count residues of the cells n/D.
inline int max_fold_multiplicity(const Pieces& in) {
    BigInt d = 1;
    for (const auto& [lo, hi] : in) d = lcm(lcm(d, denominator(lo)), denominator(hi));
    std::map<BigInt, int> count;
    for (const auto& [lo, hi] : in) {
        const BigInt a = numerator(lo * Rational(d)), b = numerator(hi * Rational(d));
        for (BigInt n = a; n < b; ++n) {
            BigInt r = n % d;
            if (r < 0) r += d;
            ++count[r];
        }
    }
    int mx = 0;
    for (const auto& [r, c] : count) mx = std::max(mx, c);
    return mx;
}

inline Rational total(const Pieces& in) {
    Rational s = 0;
    for (const auto& [lo, hi] : in) s += hi - lo;
    return s;
}

// Dyadic folding onto [1/2,1) (sign > 0) or [-1,-1/2): intersect every
// 2^j * piece with the target over a generous j range; the fold tiles the
// target iff the images have total length 1/2 and their union has length 1/2.
inline bool dyadic_tiles_half(const Pieces& in, int sign) {
    const Rational tlo = sign > 0 ? Rational(1, 2) : Rational(-1);
    const Rational thi = sign > 0 ? Rational(1) : Rational(-1, 2);
    Pieces images;
    for (const auto& [lo, hi] : in) {
        if (sign > 0 && lo < 0) continue;
        if (sign < 0 && hi > 0) continue;
        for (int j = -80; j <= 80; ++j) {
            const Rational f = heisen::pow2(j);
            const Rational a = std::max(lo * f, tlo), b = std::min(hi * f, thi);
            if (a < b) images.emplace_back(a, b);
        }
    }
    return total(images) == Rational(1, 2) && total(sweep_union(images)) == Rational(1, 2);
}

}  // namespace oracle
