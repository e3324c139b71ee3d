#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "heisen/error.hpp"
#include "heisen/field.hpp"
#include "heisen/frame_report.hpp"
#include "heisen/parallel.hpp"
#include "heisen/summation.hpp"
#include "heisen/test_bank.hpp"

namespace heisen {

/// Truncated sum of |<f, g_{k,l,m}>|^2 over k = alpha p, l = beta q, m.
inline double translation_frame_sum(const Field& g, const Field& f, double alpha, double beta, const Truncation& trunc) {
    if (!(alpha > 0) || !(beta > 0)) throw Error(ErrorKind::InvalidArgument, "alpha and beta must be positive");
    detail::check_shift(g, alpha);
    const int K = trunc.k_max, L = trunc.l_max, M = trunc.m_max;
    const auto parts = parallel_map<CompensatedSum>(static_cast<std::size_t>(2 * K + 1), [&](std::size_t i) {
        CompensatedSum s;
        const auto ov = cell_overlaps(f, 0.0, g, alpha * (static_cast<int>(i) - K));
        if (ov.empty()) return s;
        for (int q = -L; q <= L; ++q)
            for (int m = -M; m <= M; ++m) s += std::norm(overlap_integral(ov, beta * q, m));
        return s;
    });
    CompensatedSum total;
    for (const auto& p : parts) total.merge(p);
    return total.value();
}

/// Ratios frame_sum / norm2 over the bank; pass iff all lie in [1-tol, 1+tol].
inline FrameReport verify_parseval_translation(const Field& g, const IntervalUnion& s, double alpha, double beta,
                                               const TestBank& bank, const Truncation& trunc, double tol) {
    FrameReport rep;
    rep.kind = "translation";
    rep.truncation = trunc;
    rep.tol = tol;
    if (!is_subset(g.support(), s)) rep.error = "field support is not inside the given set";
    if (rep.error.empty())
        for (std::size_t i = 0; i < bank.functions.size(); ++i) {
            const double n2 = norm2(bank.functions[i]);
            const double fs = translation_frame_sum(g, bank.functions[i], alpha, beta, trunc);
            rep.tests.push_back({bank.ids[i], n2, fs, n2 > 0 ? fs / n2 : 0.0});
        }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Counterexample for sets that are not translation congruent

namespace detail {

// Profile equal to `value` on the union of [a*p, a*q) over pieces [p,q) of e.
inline TProfile scaled_set_profile(const IntervalUnion& e, double a, cplx value) {
    std::vector<std::pair<double, double>> ivs;
    for (const auto& p : e.pieces()) {
        double lo = a * to_double(p.lo), hi = a * to_double(p.hi);
        if (lo > hi) std::swap(lo, hi);
        ivs.emplace_back(lo, hi);
    }
    std::sort(ivs.begin(), ivs.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : ivs) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    TProfile out;
    for (const auto& [lo, hi] : merged) {
        if (!out.nodes.empty()) out.values.push_back(0.0);  // gap
        out.nodes.push_back(lo);
        out.values.push_back(value);
        out.nodes.push_back(hi);
    }
    return out;
}

}  // namespace detail

/// eta = sign(lambda) (1_E(lambda) 1_{(lambda-1)E}(t) + 1_{E-1}(lambda) 1_{(lambda+1)E}(t)),
/// with the t-sets taken at each cell midpoint.
inline Field build_counterexample_eta(const IntervalUnion& s, const IntervalUnion& e, const Rational& resolution) {
    if (e.empty() || measure(e) == 0) throw Error(ErrorKind::BadE, "E must have positive measure");
    const auto e_minus = translate(e, Rational(-1));
    if (!is_subset(e, intersect(s, IntervalUnion::single(0, 1))))
        throw Error(ErrorKind::BadE, "E must lie in I and [0,1]");
    if (!is_subset(e_minus, intersect(s, IntervalUnion::single(-1, 0))))
        throw Error(ErrorKind::BadE, "E-1 must lie in I and [-1,0]");

    LambdaGrid grid = LambdaGrid::build(unite(e_minus, e), resolution);
    std::vector<TProfile> rows;
    for (const auto& c : grid.cells) {
        const double lam = c.mid();
        rows.push_back(lam > 0 ? detail::scaled_set_profile(e, lam - 1, 1.0)
                               : detail::scaled_set_profile(e, lam + 1, -1.0));
    }
    return Field(std::move(grid), std::move(rows));
}

/// 1_{[-1,0)}(t) on positive fibers of s, 1_{[0,1)}(t) on negative ones.
inline Field counterexample_window(const IntervalUnion& s, const Rational& resolution) {
    LambdaGrid grid = LambdaGrid::build(s, resolution);
    std::vector<TProfile> rows;
    for (const auto& c : grid.cells)
        rows.push_back(c.sign() > 0 ? TProfile::indicator(-1, 0) : TProfile::indicator(0, 1));
    return Field(std::move(grid), std::move(rows));
}

struct ScanEntry {
    TranslationIndex index;
    double abs_inner = 0;
};

struct ScanResult {
    double max_abs = 0;
    TranslationIndex argmax;
    std::vector<ScanEntry> entries;  // filled when requested
};

/// max |<eta, g_{k,l,m}>| over the truncation box.
inline ScanResult orthogonality_scan(const Field& eta, const Field& g, const Truncation& trunc, double alpha = 1,
                                     double beta = 1, bool keep_entries = false) {
    const int K = trunc.k_max, L = trunc.l_max, M = trunc.m_max;
    const auto parts = parallel_map<ScanResult>(static_cast<std::size_t>(2 * K + 1), [&](std::size_t i) {
        ScanResult r;
        const double k = alpha * (static_cast<int>(i) - K);
        const auto ov = cell_overlaps(eta, 0.0, g, k);
        for (int q = -L; q <= L; ++q)
            for (int m = -M; m <= M; ++m) {
                const double v = ov.empty() ? 0.0 : std::abs(overlap_integral(ov, beta * q, m));
                const TranslationIndex idx{k, beta * q, m};
                if (keep_entries) r.entries.push_back({idx, v});
                if (v > r.max_abs) {
                    r.max_abs = v;
                    r.argmax = idx;
                }
            }
        return r;
    });
    ScanResult out;
    for (auto& p : parts) {
        if (p.max_abs > out.max_abs) {
            out.max_abs = p.max_abs;
            out.argmax = p.argmax;
        }
        for (auto& e : p.entries) out.entries.push_back(e);
    }
    return out;
}

}  // namespace heisen
