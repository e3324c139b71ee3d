#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "heisen/error.hpp"
#include "heisen/field.hpp"
#include "heisen/frame_report.hpp"
#include "heisen/summation.hpp"
#include "heisen/test_bank.hpp"
#include "heisen/translation.hpp"

namespace heisen {

/// Unimodular family chi_a(lambda), a > 0.
struct Multiplier {
    enum class Kind { Trivial, LogPhase, Custom };

    Kind kind = Kind::Trivial;
    double c = 0;                                   // LogPhase: chi_a = e^{i c ln a}
    std::function<cplx(double, double)> custom;     // Custom: chi(a, lambda)

    static Multiplier trivial() { return {}; }
    static Multiplier log_phase(double c) { return {Kind::LogPhase, c, {}}; }
    static Multiplier from_function(std::function<cplx(double, double)> fn) { return {Kind::Custom, 0, std::move(fn)}; }

    cplx operator()(double a, double lambda) const {
        switch (kind) {
            case Kind::Trivial: return 1.0;
            case Kind::LogPhase: return cis(c * std::log(a));
            case Kind::Custom: return custom(a, lambda);
        }
        return 1.0;
    }

    std::string name() const {
        switch (kind) {
            case Kind::Trivial: return "trivial";
            case Kind::LogPhase: return "log_phase(" + std::to_string(c) + ")";
            case Kind::Custom: return "custom";
        }
        return "unknown";
    }
};

struct MultiplierCheck {
    bool pass = false;
    double max_error = 0;
};

/// Samples chi_{ab} = chi_a chi_b, chi_{1/a} = conj chi_a, |chi_a| = 1 and
/// chi_1 = 1 at random (a, b, lambda).
inline MultiplierCheck multiplier_check(const Multiplier& chi, std::size_t samples = 200, std::uint64_t seed = 1,
                                        double tol = 1e-12) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_a(-3.0, 3.0), lam(-4.0, 4.0);
    MultiplierCheck r;
    for (std::size_t i = 0; i < samples; ++i) {
        const double a = std::exp2(log_a(rng)), b = std::exp2(log_a(rng));
        double l = lam(rng);
        if (l == 0) l = 0.5;
        const cplx ca = chi(a, l), cb = chi(b, l);
        r.max_error = std::max({r.max_error, std::abs(chi(a * b, l) - ca * cb), std::abs(chi(1 / a, l) - std::conj(ca)),
                                std::abs(std::abs(ca) - 1.0), std::abs(chi(1.0, l) - 1.0)});
    }
    r.pass = r.max_error <= tol;
    return r;
}

/// (D_j f)(lambda, t) = chi_{2^j}(lambda) f(2^j lambda, 2^{-j/2} t) 2^{3j/4}.
/// Cells scale by 2^{-j}, t-nodes by 2^{j/2}.
inline Field dilate_field(const Field& f, int j, const Multiplier& chi = {}) {
    const double a = std::exp2(j);
    const double lam_scale = std::exp2(-j);
    const double t_scale = std::exp2(0.5 * j);
    const double amp = std::exp2(0.75 * j);

    LambdaGrid grid;
    grid.support = dilate(f.support(), -j);
    grid.resolution = f.grid().resolution * pow2(-j);
    std::vector<TProfile> rows;
    rows.reserve(f.rows().size());
    for (std::size_t i = 0; i < f.cells().size(); ++i) {
        const LambdaCell c{f.cells()[i].lo * lam_scale, f.cells()[i].hi * lam_scale};
        grid.cells.push_back(c);
        TProfile p = f.rows()[i];
        for (auto& t : p.nodes) t *= t_scale;
        const cplx factor = amp * chi(a, c.mid());
        for (auto& v : p.values) v *= factor;
        rows.push_back(std::move(p));
    }
    std::optional<UniformT> u;
    if (f.uniform_t()) u = UniformT{f.uniform_t()->t_min * t_scale, f.uniform_t()->dt * t_scale, f.uniform_t()->n_t};
    return Field(std::move(grid), std::move(rows), u);
}

struct TelescopeResult {
    double lhs = 0;
    double rhs = 0;
    std::vector<ShellResult> per_j;  // norm2 of the restricted term for each j
};

/// lhs = ||f||^2, rhs = sum_j ||1_{I x R} D_{-j} f||^2 over [j_min, j_max].
inline TelescopeResult telescope_check(const Field& f, const IntervalUnion& s, int j_min, int j_max,
                                       const Multiplier& chi = {}) {
    if (!is_dilation_congruent_shannon(s).congruent)
        throw Error(ErrorKind::NotDilationCongruent, to_string(s) + " is not dilation congruent with the Shannon set");
    TelescopeResult r;
    r.lhs = norm2(f);
    CompensatedSum total;
    for (int j = j_min; j <= j_max; ++j) {
        const double v = norm2(restrict_to(dilate_field(f, -j, chi), s));
        r.per_j.push_back({j, v});
        total += v;
    }
    r.rhs = total.value();
    return r;
}

struct WaveletSystemSpec {
    double alpha = 1;
    double beta = 1;
    int j_min = -2;
    int j_max = 2;
    Truncation box;
    Multiplier multiplier;

    void validate() const {
        if (!(alpha > 0) || !(beta > 0)) throw Error(ErrorKind::InvalidArgument, "alpha and beta must be positive");
        if (!(j_min <= 0 && 0 <= j_max)) throw Error(ErrorKind::InvalidArgument, "need j_min <= 0 <= j_max");
    }
};

struct WaveletSum {
    double total = 0;
    std::vector<ShellResult> per_j;
};

/// sum over j, k, l, m of |<f, D_j T_{k,l,m} g>|^2, evaluated as
/// |<D_{-j} f, g_{k,l,m}>|^2.
inline WaveletSum wavelet_frame_sum(const Field& g, const Field& f, const WaveletSystemSpec& spec) {
    spec.validate();
    WaveletSum out;
    CompensatedSum total;
    for (int j = spec.j_min; j <= spec.j_max; ++j) {
        const Field dj = restrict_to(dilate_field(f, -j, spec.multiplier), g.support());
        const double v = dj.cells().empty() ? 0.0 : translation_frame_sum(g, dj, spec.alpha, spec.beta, spec.box);
        out.per_j.push_back({j, v});
        total += v;
    }
    out.total = total.value();
    return out;
}

inline FrameReport verify_parseval_wavelet(const Field& g, const IntervalUnion& s, const WaveletSystemSpec& spec,
                                           const TestBank& bank, double tol) {
    spec.validate();
    FrameReport rep;
    rep.kind = "wavelet";
    rep.truncation = spec.box;
    rep.truncation.j_min = spec.j_min;
    rep.truncation.j_max = spec.j_max;
    rep.tol = tol;
    if (!is_subset(g.support(), s)) rep.error = "field support is not inside the given set";
    for (int j = spec.j_min; j <= spec.j_max; ++j) rep.per_j.push_back({j, 0.0});
    if (rep.error.empty())
        for (std::size_t i = 0; i < bank.functions.size(); ++i) {
            const double n2 = norm2(bank.functions[i]);
            const WaveletSum ws = wavelet_frame_sum(g, bank.functions[i], spec);
            for (std::size_t k = 0; k < ws.per_j.size(); ++k) rep.per_j[k].frame_sum += ws.per_j[k].frame_sum;
            rep.tests.push_back({bank.ids[i], n2, ws.total, n2 > 0 ? ws.total / n2 : 0.0});
        }
    rep.finalize();
    return rep;
}

/// The bank spec moved to the shell 2^j * support, with t scaled by 2^{-j/2},
/// so that D_j maps shell functions back onto the original grid.
inline BankSpec shell_bank_spec(const BankSpec& base, int j) {
    BankSpec s = base;
    const double t_scale = std::exp2(-0.5 * j);
    s.support = dilate(base.support, j);
    s.coarse_dl = base.coarse_dl * pow2(j);
    s.t_min = base.t_min * t_scale;
    s.t_max = base.t_max * t_scale;
    s.coarse_dt = base.coarse_dt * t_scale;
    return s;
}

/// One bank per shell j in [j_min, j_max] (seed + shell index), concatenated,
/// plus `multi` sums of one function from every shell.
inline TestBank make_shell_bank(const BankSpec& base, int j_min, int j_max, std::uint64_t seed,
                                std::size_t per_shell, std::size_t multi = 0) {
    TestBank out;
    out.seed = seed;
    std::vector<TestBank> shells;
    for (int j = j_min; j <= j_max; ++j) {
        shells.push_back(make_test_bank(shell_bank_spec(base, j), seed + static_cast<std::uint64_t>(j - j_min), per_shell));
        for (std::size_t i = 0; i < shells.back().functions.size(); ++i) {
            out.functions.push_back(shells.back().functions[i]);
            out.ids.push_back("shell" + std::to_string(j) + "_" + shells.back().ids[i]);
        }
    }
    for (std::size_t n = 0; n < multi && n < per_shell; ++n) {
        // Shell supports are disjoint, so the sum is a concatenation of cells.
        LambdaGrid grid;
        std::vector<TProfile> rows;
        std::vector<std::pair<LambdaCell, TProfile>> cells;
        for (const auto& sh : shells) {
            const Field& f = sh.functions[n];
            grid.support = unite(grid.support, f.support());
            for (std::size_t c = 0; c < f.cells().size(); ++c) cells.emplace_back(f.cells()[c], f.rows()[c]);
        }
        std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
        for (auto& [c, r] : cells) {
            grid.cells.push_back(c);
            rows.push_back(std::move(r));
        }
        grid.resolution = base.coarse_dl;
        out.functions.emplace_back(std::move(grid), std::move(rows));
        out.ids.push_back("multishell_" + std::to_string(n));
    }
    return out;
}

}  // namespace heisen
