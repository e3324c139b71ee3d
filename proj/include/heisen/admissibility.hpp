#pragma once

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "heisen/error.hpp"
#include "heisen/field.hpp"
#include "heisen/summation.hpp"

namespace heisen {

/// Integral of |g|^2 |lambda|^{-1} dt dlambda over one half-line, using the
/// primitive ln|lambda| on every cell.
inline double calderon_integral(const Field& g, int sign) {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.cells().size(); ++i) {
        const auto& c = g.cells()[i];
        if (c.sign() != (sign > 0 ? 1 : -1)) continue;
        if (c.lo == 0 || c.hi == 0)
            throw Error(ErrorKind::TouchesZero, "lambda cell touches 0; the integral diverges");
        const double a = std::abs(c.lo), b = std::abs(c.hi);
        const double lo = std::min(a, b), hi = std::max(a, b);
        s += g.rows()[i].norm2() * std::log1p((hi - lo) / lo);
    }
    return s.value();
}

struct AdmissibilityReport {
    double integral_pos = 0;
    double integral_neg = 0;
    double target_lo = 0;  // A alpha beta ln 2
    double target_hi = 0;  // B alpha beta ln 2
    double tol = 0;
    bool pass_pos = false;
    bool pass_neg = false;
    /// 1/sqrt(alpha beta ln 2): rescales a Parseval generator to an admissible vector.
    double admissible_scale = 0;

    bool pass() const { return pass_pos && pass_neg; }
};

/// Checks A alpha beta ln 2 <= integral <= B alpha beta ln 2 on both half-lines.
inline AdmissibilityReport check_necessary_condition(const Field& g, double A, double B, double alpha, double beta,
                                                     double tol = 1e-12) {
    if (!(A > 0) || A > B) throw Error(ErrorKind::BadBounds, "need 0 < A <= B");
    if (!(alpha > 0) || !(beta > 0)) throw Error(ErrorKind::InvalidArgument, "alpha and beta must be positive");
    AdmissibilityReport r;
    const double base = alpha * beta * std::numbers::ln2;
    r.integral_pos = calderon_integral(g, 1);
    r.integral_neg = calderon_integral(g, -1);
    r.target_lo = A * base;
    r.target_hi = B * base;
    r.tol = tol;
    r.pass_pos = r.integral_pos >= r.target_lo - tol && r.integral_pos <= r.target_hi + tol;
    r.pass_neg = r.integral_neg >= r.target_lo - tol && r.integral_neg <= r.target_hi + tol;
    r.admissible_scale = 1.0 / std::sqrt(base);
    return r;
}

struct ConsistencyResult {
    bool consistent = false;
    double calderon_pos = 0, calderon_neg = 0;
    double log_measure_pos = 0, log_measure_neg = 0;
};

/// For a Gabor field g over I: the Calderon integrals must equal
/// alpha beta log_measure(I) on each half-line, and log_measure(I) must be
/// ln 2 there. Fails for sets that are not dilation congruent with the
/// Shannon set and for fields with the wrong fiber norms.
inline ConsistencyResult gabor_wavelet_consistency(const IntervalUnion& s, const Field& g, double alpha, double beta,
                                                   double tol = 1e-10) {
    ConsistencyResult r;
    r.calderon_pos = calderon_integral(g, 1);
    r.calderon_neg = calderon_integral(g, -1);
    r.log_measure_pos = log_measure(s, 1);
    r.log_measure_neg = log_measure(s, -1);
    const double ab = alpha * beta;
    r.consistent = std::abs(r.calderon_pos - ab * r.log_measure_pos) <= tol &&
                   std::abs(r.calderon_neg - ab * r.log_measure_neg) <= tol &&
                   std::abs(r.log_measure_pos - std::numbers::ln2) <= tol &&
                   std::abs(r.log_measure_neg - std::numbers::ln2) <= tol;
    return r;
}

inline nlohmann::json to_json(const AdmissibilityReport& r) {
    return {{"integral_pos", r.integral_pos}, {"integral_neg", r.integral_neg},
            {"target", {r.target_lo, r.target_hi}}, {"tol", r.tol},
            {"pass_pos", r.pass_pos},         {"pass_neg", r.pass_neg},
            {"pass", r.pass()},               {"admissible_scale", r.admissible_scale}};
}

}  // namespace heisen
