#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "heisen/error.hpp"
#include "heisen/field.hpp"
#include "heisen/frame_report.hpp"
#include "heisen/heisenberg_group.hpp"
#include "heisen/parallel.hpp"
#include "heisen/test_bank.hpp"

namespace heisen {

/// Gabor system e^{-2 pi i lambda l t} u(t - k) over k in alpha Z, l in beta Z,
/// truncated to |k| <= k_max alpha and |l| <= l_max beta.
struct GaborSpec {
    double alpha = 1;
    double beta = 1;
    double lambda = 1;
    int k_max = 16;
    int l_max = 16;
};

inline TProfile to_profile(const SampledLine& s) { return TProfile::uniform(s.t_min, s.dt, s.values); }

/// e^{-2 pi i lambda l t} u(t - k); same as pi_lambda(k, l, 0).
inline SampledLine gabor_translate(const SampledLine& u, double k, double l, double lambda) {
    return schrodinger(lambda, GroupElement{k, l, 0}, u);
}

namespace detail {

// sum over segments of coef * int e^{i w t} dt, from a jump encoding
inline cplx line_integral(const CellOverlap& o, double w) {
    if (w == 0) return o.area;
    CompensatedComplexSum s;
    for (std::size_t n = 0; n < o.nodes.size(); ++n) s += o.jumps[n] * cis(w * o.nodes[n]);
    return s.value() / cplx(0.0, w);
}

inline void check_spec(const GaborSpec& spec) {
    if (!(spec.alpha > 0) || !(spec.beta > 0))
        throw Error(ErrorKind::InvalidArgument, "alpha and beta must be positive");
    if (spec.lambda == 0) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
    if (spec.k_max < 0 || spec.l_max < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation");
}

}  // namespace detail

/// <f, e^{-2 pi i lambda l t} u(t - k)> on L^2(R), integrated exactly per segment.
inline cplx gabor_inner(const TProfile& f, const TProfile& u, double k, double l, double lambda) {
    CellOverlap o;
    detail::profile_product(f, 0.0, u, k, o);
    if (o.nodes.empty()) return 0.0;
    return detail::line_integral(o, two_pi * lambda * l);
}

/// Truncated sum of |<f, T_{k,l} u>|^2 over the lattice.
inline double gabor_frame_sum(const TProfile& u, const TProfile& f, const GaborSpec& spec) {
    detail::check_spec(spec);
    CompensatedSum total;
    CellOverlap o;
    for (int p = -spec.k_max; p <= spec.k_max; ++p) {
        detail::profile_product(f, 0.0, u, spec.alpha * p, o);
        if (o.nodes.empty()) continue;
        for (int q = -spec.l_max; q <= spec.l_max; ++q)
            total += std::norm(detail::line_integral(o, two_pi * spec.lambda * spec.beta * q));
    }
    return total.value();
}

inline double gabor_frame_sum(const SampledLine& u, const SampledLine& f, const GaborSpec& spec) {
    return gabor_frame_sum(to_profile(u), to_profile(f), spec);
}

/// The band [-1/(alpha beta), 1/(alpha beta)] as an exact set (closed upper end
/// is immaterial for half-open pieces).
inline IntervalUnion gabor_band(double alpha, double beta) {
    if (!(alpha > 0) || !(beta > 0)) throw Error(ErrorKind::InvalidArgument, "alpha and beta must be positive");
    const Rational r = Rational(1) / (Rational(alpha) * Rational(beta));
    return IntervalUnion::single(-r, r);
}

/// beta^{1/2} 1_{I x [0, alpha)} on a lambda grid of the given resolution.
inline Field indicator_gabor_field(const IntervalUnion& s, double alpha, double beta, const Rational& resolution) {
    if (!is_subset(s, gabor_band(alpha, beta)))
        throw Error(ErrorKind::OutsideBand, to_string(s) + " exceeds the band 1/(alpha beta)");
    LambdaGrid grid = LambdaGrid::build(s, resolution);
    const std::size_t n = grid.cells.size();
    return Field::uniform(std::move(grid), 0.0, alpha, 1, std::vector<cplx>(n, cplx(std::sqrt(beta))));
}

namespace detail {

inline void check_field_support(const Field& g, const IntervalUnion& s, double alpha, double beta) {
    if (!is_subset(s, gabor_band(alpha, beta)))
        throw Error(ErrorKind::BandViolation, to_string(s) + " exceeds the band 1/(alpha beta)");
    if (!is_subset(g.support(), s))
        throw Error(ErrorKind::InvalidArgument, "field support is not inside the given set");
}

template <typename LinesAt>
FrameReport gabor_fiber_report(const Field& g, double alpha, double beta, const Truncation& trunc, double tol,
                               LinesAt&& lines_at) {
    FrameReport rep;
    rep.kind = "gabor";
    rep.truncation = trunc;
    rep.truncation.m_max = 0;
    rep.tol = tol;

    struct CellOut {
        FiberResult fiber;
        std::vector<TestResult> tests;
    };
    const auto per_cell = parallel_map<CellOut>(g.cells().size(), [&](std::size_t c) {
        CellOut out;
        const double lam = g.cells()[c].mid();
        TProfile u = g.rows()[c];
        for (auto& v : u.values) v *= std::sqrt(std::abs(lam));
        out.fiber.lambda = lam;
        out.fiber.fiber_norm = u.norm2();
        out.fiber.norm_ok = out.fiber.fiber_norm <= 1 + tol;
        const GaborSpec spec{alpha, beta, lam, trunc.k_max, trunc.l_max};
        double lo = 1e300, hi = -1e300;
        for (const auto& [id, f] : lines_at(lam)) {
            const double n2 = f->norm2();
            if (!(n2 > 0)) continue;
            const double fs = gabor_frame_sum(u, *f, spec);
            out.tests.push_back({id + "@" + std::to_string(lam), n2, fs, fs / n2});
            lo = std::min(lo, fs / n2);
            hi = std::max(hi, fs / n2);
        }
        out.fiber.min_ratio = out.tests.empty() ? 0 : lo;
        out.fiber.max_ratio = out.tests.empty() ? 0 : hi;
        return out;
    });
    for (auto& c : per_cell) {
        rep.per_fiber.push_back(c.fiber);
        for (auto& t : c.tests) rep.tests.push_back(std::move(t));
    }
    rep.finalize();
    return rep;
}

}  // namespace detail

/// Runs the fiber frame sums at every cell midpoint of g against a line bank,
/// and records the fiber norms. Throws BandViolation when s leaves the band.
inline FrameReport check_gabor_field(const Field& g, const IntervalUnion& s, double alpha, double beta,
                                     const LineBank& bank, const Truncation& trunc, double tol) {
    detail::check_field_support(g, s, alpha, beta);
    return detail::gabor_fiber_report(g, alpha, beta, trunc, tol, [&](double) {
        std::vector<std::pair<std::string, const TProfile*>> out;
        for (std::size_t i = 0; i < bank.lines.size(); ++i) out.emplace_back(bank.ids[i], &bank.lines[i]);
        return out;
    });
}

/// Same check with the bank's fields restricted to each fiber.
inline FrameReport check_gabor_field(const Field& g, const IntervalUnion& s, double alpha, double beta,
                                     const TestBank& bank, const Truncation& trunc, double tol) {
    detail::check_field_support(g, s, alpha, beta);
    return detail::gabor_fiber_report(g, alpha, beta, trunc, tol, [&](double lam) {
        std::vector<std::pair<std::string, const TProfile*>> out;
        for (std::size_t i = 0; i < bank.functions.size(); ++i)
            if (const auto c = bank.functions[i].cell_index(lam))
                out.emplace_back(bank.ids[i], &bank.functions[i].rows()[*c]);
        return out;
    });
}

}  // namespace heisen
