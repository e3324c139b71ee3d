#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisen/error.hpp"
#include "heisen/interval_set.hpp"
#include "heisen/oscillatory.hpp"
#include "heisen/summation.hpp"

namespace heisen {

/// Lambda cell [lo, hi); never contains 0 in its interior.
struct LambdaCell {
    double lo = 0, hi = 0;

    double mid() const noexcept { return 0.5 * (lo + hi); }
    double width() const noexcept { return hi - lo; }
    int sign() const noexcept { return lo + hi < 0 ? -1 : 1; }
    /// Integral of |lambda| over the cell.
    double mass() const noexcept { return std::abs(hi * std::abs(hi) - lo * std::abs(lo)) * 0.5; }
    bool operator==(const LambdaCell&) const = default;
};

/// Partition of a support set into lambda cells of width at most `resolution`.
struct LambdaGrid {
    IntervalUnion support;
    std::vector<LambdaCell> cells;
    Rational resolution = 0;

    /// Splits every piece at 0, then each part into ceil(width/resolution)
    /// equal cells (endpoints computed exactly, then rounded).
    static LambdaGrid build(const IntervalUnion& support, const Rational& resolution) {
        if (!(resolution > 0)) throw Error(ErrorKind::InvalidArgument, "lambda resolution must be positive");
        LambdaGrid g;
        g.support = support;
        g.resolution = resolution;
        std::vector<Interval> parts = half_line(support, -1).pieces();
        const IntervalUnion pos = half_line(support, 1);
        parts.insert(parts.end(), pos.pieces().begin(), pos.pieces().end());
        for (const auto& p : parts) {
            const Rational q = p.length() / resolution;
            BigInt n = numerator(q) / denominator(q);
            if (Rational(n) < q) ++n;
            const Rational w = p.length() / Rational(n);
            for (BigInt i = 0; i < n; ++i) {
                const Rational lo = p.lo + w * Rational(i);
                const Rational hi = (i + 1 == n) ? p.hi : lo + w;
                g.cells.push_back({to_double(lo), to_double(hi)});
            }
        }
        return g;
    }
};

/// Piecewise-constant function of t: values[i] on [nodes[i], nodes[i+1]).
struct TProfile {
    std::vector<double> nodes;
    std::vector<cplx> values;

    static TProfile indicator(double lo, double hi, cplx value = 1.0) { return {{lo, hi}, {value}}; }

    static TProfile uniform(double t_min, double dt, std::vector<cplx> values) {
        TProfile p;
        p.nodes.resize(values.size() + 1);
        for (std::size_t i = 0; i < p.nodes.size(); ++i) p.nodes[i] = t_min + dt * static_cast<double>(i);
        p.values = std::move(values);
        return p;
    }

    bool empty() const noexcept { return values.empty(); }

    double norm2() const {
        CompensatedSum s;
        for (std::size_t i = 0; i < values.size(); ++i) s += std::norm(values[i]) * (nodes[i + 1] - nodes[i]);
        return s.value();
    }

    cplx at(double t) const {
        if (values.empty() || t < nodes.front() || t >= nodes.back()) return 0.0;
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
        return values[static_cast<std::size_t>(it - nodes.begin()) - 1];
    }

    void validate() const {
        if (values.empty() && nodes.empty()) return;
        if (nodes.size() != values.size() + 1)
            throw Error(ErrorKind::GridMismatch, "profile needs one more node than values");
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            if (!(nodes[i] < nodes[i + 1]))
                throw Error(ErrorKind::GridMismatch, "profile nodes must be strictly increasing");
    }
};

/// Shared uniform t-grid, when the field was built on one.
struct UniformT {
    double t_min = 0;
    double dt = 1;
    std::size_t n_t = 0;
};

/// Piecewise-constant function on lambda-cells x t-segments. Each lambda cell
/// carries its own t-profile; a uniform tensor grid is the special case where
/// all profiles share nodes.
class Field {
public:
    Field() = default;

    Field(LambdaGrid grid, std::vector<TProfile> rows, std::optional<UniformT> uniform = std::nullopt)
        : grid_(std::move(grid)), rows_(std::move(rows)), uniform_(uniform) {
        validate();
    }

    /// Row-major values (cell, t-cell).
    static Field uniform(LambdaGrid grid, double t_min, double dt, std::size_t n_t, const std::vector<cplx>& values) {
        if (!(dt > 0)) throw Error(ErrorKind::GridMismatch, "dt must be positive");
        if (values.size() != grid.cells.size() * n_t)
            throw Error(ErrorKind::GridMismatch, "value count does not match the grid");
        std::vector<TProfile> rows;
        rows.reserve(grid.cells.size());
        for (std::size_t c = 0; c < grid.cells.size(); ++c)
            rows.push_back(TProfile::uniform(
                t_min, dt,
                std::vector<cplx>(values.begin() + static_cast<std::ptrdiff_t>(c * n_t),
                                  values.begin() + static_cast<std::ptrdiff_t>((c + 1) * n_t))));
        return Field(std::move(grid), std::move(rows), UniformT{t_min, dt, n_t});
    }

    /// Field whose value on every cell is fn(cell midpoint lambda, t-midpoint).
    template <typename Fn>
    static Field sample(LambdaGrid grid, double t_min, double dt, std::size_t n_t, Fn&& fn) {
        std::vector<cplx> vals;
        vals.reserve(grid.cells.size() * n_t);
        for (const auto& c : grid.cells)
            for (std::size_t i = 0; i < n_t; ++i)
                vals.push_back(fn(c.mid(), t_min + (static_cast<double>(i) + 0.5) * dt));
        return uniform(std::move(grid), t_min, dt, n_t, vals);
    }

    const LambdaGrid& grid() const noexcept { return grid_; }
    const IntervalUnion& support() const noexcept { return grid_.support; }
    const std::vector<LambdaCell>& cells() const noexcept { return grid_.cells; }
    const std::vector<TProfile>& rows() const noexcept { return rows_; }
    std::vector<TProfile>& rows() noexcept { return rows_; }
    const std::optional<UniformT>& uniform_t() const noexcept { return uniform_; }

    /// Index of the cell containing lambda, if any.
    std::optional<std::size_t> cell_index(double lambda) const {
        const auto& cs = grid_.cells;
        auto it = std::upper_bound(cs.begin(), cs.end(), lambda,
                                   [](double v, const LambdaCell& c) { return v < c.lo; });
        if (it == cs.begin()) return std::nullopt;
        --it;
        if (lambda >= it->hi) return std::nullopt;
        return static_cast<std::size_t>(it - cs.begin());
    }

    /// t-profile at lambda (empty outside the grid).
    TProfile fiber(double lambda) const {
        const auto i = cell_index(lambda);
        return i ? rows_[*i] : TProfile{};
    }

    cplx at(double lambda, double t) const {
        const auto i = cell_index(lambda);
        return i ? rows_[*i].at(t) : cplx(0.0);
    }

    Field scaled(cplx c) const {
        Field out = *this;
        for (auto& r : out.rows_)
            for (auto& v : r.values) v *= c;
        return out;
    }

private:
    void validate() const {
        if (rows_.size() != grid_.cells.size())
            throw Error(ErrorKind::GridMismatch, "one t-profile per lambda cell is required");
        for (std::size_t i = 0; i < grid_.cells.size(); ++i) {
            const auto& c = grid_.cells[i];
            if (!(c.lo < c.hi)) throw Error(ErrorKind::GridMismatch, "empty lambda cell");
            if (c.lo < 0 && c.hi > 0) throw Error(ErrorKind::GridMismatch, "lambda cell straddles 0");
            if (i > 0 && grid_.cells[i - 1].hi > c.lo)
                throw Error(ErrorKind::GridMismatch, "lambda cells must be sorted and disjoint");
            rows_[i].validate();
        }
    }

    LambdaGrid grid_;
    std::vector<TProfile> rows_;
    std::optional<UniformT> uniform_;
};

/// Integral of |f|^2 |lambda| dlambda dt.
inline double norm2(const Field& f) {
    CompensatedSum s;
    for (std::size_t i = 0; i < f.cells().size(); ++i) s += f.cells()[i].mass() * f.rows()[i].norm2();
    return s.value();
}

/// f restricted to s x R. Cells are cut at the endpoints of s.
inline Field restrict_to(const Field& f, const IntervalUnion& s) {
    LambdaGrid g;
    g.support = intersect(f.support(), s);
    g.resolution = f.grid().resolution;
    std::vector<TProfile> rows;
    std::vector<std::pair<double, double>> pieces;
    for (const auto& p : s.pieces()) pieces.emplace_back(to_double(p.lo), to_double(p.hi));
    for (std::size_t i = 0; i < f.cells().size(); ++i) {
        const auto& c = f.cells()[i];
        for (const auto& [lo, hi] : pieces) {
            const double a = std::max(lo, c.lo), b = std::min(hi, c.hi);
            if (a < b) {
                g.cells.push_back({a, b});
                rows.push_back(f.rows()[i]);
            }
        }
    }
    return Field(std::move(g), std::move(rows), f.uniform_t());
}

struct ModulationSum {
    double partial = 0;   // sum_{|m| <= m_max} |int u e^{-2 pi i lambda m} dlambda|^2
    double norm2 = 0;     // int |u|^2 dlambda
    double residual = 0;  // norm2 - partial
};

/// Plain modulation sums for a piecewise-constant u on lambda cells. For a set
/// whose integer translates are disjoint the residual tends to 0 with m_max.
inline ModulationSum modulation_sum(const std::vector<LambdaCell>& cells, const std::vector<cplx>& u, int m_max) {
    if (cells.size() != u.size()) throw Error(ErrorKind::GridMismatch, "one value per cell is required");
    ModulationSum r;
    CompensatedSum partial, n2;
    for (std::size_t i = 0; i < cells.size(); ++i) n2 += std::norm(u[i]) * cells[i].width();
    for (int m = -m_max; m <= m_max; ++m) {
        CompensatedComplexSum c;
        for (std::size_t i = 0; i < cells.size(); ++i) c += u[i] * exp_integral(cells[i].lo, cells[i].hi, -two_pi * m);
        partial += std::norm(c.value());
    }
    r.partial = partial.value();
    r.norm2 = n2.value();
    r.residual = r.norm2 - r.partial;
    return r;
}

// ---------------------------------------------------------------------------
// Translated inner products

/// Index (k, l, m) of the operator e^{2 pi i lambda m} e^{-2 pi i lambda l t} g(lambda, t - k).
struct TranslationIndex {
    double k = 0;
    double l = 0;
    long long m = 0;
};

/// For one overlap of lambda cells: the t-breakpoints of f(t - kf) conj(g(t - kg))
/// with jump weights, ready for the closed-form kernels.
struct CellOverlap {
    double a = 0, b = 0;
    double sign = 1;
    std::vector<double> nodes;  // segment endpoints
    std::vector<cplx> jumps;    // coef(left) - coef(right) at each node
    cplx area = 0;              // sum of coef * segment length
};

namespace detail {

// Products of two shifted profiles on their common refinement, encoded as
// jumps so each breakpoint is visited once.
inline void profile_product(const TProfile& f, double kf, const TProfile& g, double kg, CellOverlap& out) {
    out.nodes.clear();
    out.jumps.clear();
    out.area = 0;
    if (f.empty() || g.empty()) return;
    const double lo = std::max(f.nodes.front() + kf, g.nodes.front() + kg);
    const double hi = std::min(f.nodes.back() + kf, g.nodes.back() + kg);
    if (!(lo < hi)) return;

    // last node at or left of lo, compared in shifted coordinates
    const auto start = [lo](const std::vector<double>& nodes, double k) {
        const auto it = std::partition_point(nodes.begin(), nodes.end(), [&](double x) { return x + k <= lo; });
        return static_cast<std::size_t>(it - nodes.begin()) - 1;
    };
    std::size_t i = start(f.nodes, kf);
    std::size_t j = start(g.nodes, kg);
    double t = lo;
    cplx prev = 0;
    CompensatedComplexSum area;
    while (t < hi) {
        const double nf = f.nodes[i + 1] + kf, ng = g.nodes[j + 1] + kg;
        const double next = std::min({nf, ng, hi});
        const cplx coef = f.values[i] * std::conj(g.values[j]);
        if (coef != prev) {
            out.nodes.push_back(t);
            out.jumps.push_back(prev - coef);
            prev = coef;
        }
        area += coef * (next - t);
        t = next;
        if (nf <= next) ++i;
        if (ng <= next) ++j;
        if (i + 1 >= f.nodes.size() || j + 1 >= g.nodes.size()) break;
    }
    if (prev != cplx(0.0)) {
        out.nodes.push_back(t);
        out.jumps.push_back(prev);
    }
    out.area = area.value();
}

}  // namespace detail

/// All overlaps of f's cells with g's cells, with the t-products of
/// f(., t - kf) and conj g(., t - kg). Empty products are dropped.
inline std::vector<CellOverlap> cell_overlaps(const Field& f, double kf, const Field& g, double kg) {
    std::vector<CellOverlap> out;
    const auto& fc = f.cells();
    const auto& gc = g.cells();
    std::size_t i = 0, j = 0;
    CellOverlap cur;
    while (i < fc.size() && j < gc.size()) {
        const double a = std::max(fc[i].lo, gc[j].lo), b = std::min(fc[i].hi, gc[j].hi);
        if (a < b) {
            detail::profile_product(f.rows()[i], kf, g.rows()[j], kg, cur);
            if (!cur.nodes.empty()) {
                cur.a = a;
                cur.b = b;
                cur.sign = fc[i].sign();
                out.push_back(cur);
            }
        }
        if (fc[i].hi < gc[j].hi) ++i;
        else ++j;
    }
    return out;
}

/// Sum over overlaps of the rectangle kernels at (l, m).
inline cplx overlap_integral(const std::vector<CellOverlap>& overlaps, double l, double m) {
    CompensatedComplexSum s;
    if (l == 0) {
        for (const auto& o : overlaps) s += o.sign * o.area * lin_exp_integral(o.a, o.b, -two_pi * m);
        return s.value();
    }
    // sum over segments of coef [E(t1) - E(t0)] = sum over nodes of jump * E(t)
    for (const auto& o : overlaps) {
        CompensatedComplexSum part;
        for (std::size_t n = 0; n < o.nodes.size(); ++n)
            part += o.jumps[n] * exp_integral(o.a, o.b, two_pi * (l * o.nodes[n] - m));
        s += o.sign * part.value();
    }
    return s.value() / cplx(0.0, two_pi * l);
}

namespace detail {

inline void check_shift(const Field& g, double k) {
    if (const auto& u = g.uniform_t()) (void)grid_steps(k, u->dt);
}

}  // namespace detail

/// A translation operator applied lazily to a field.
struct TranslatedField {
    const Field* base = nullptr;
    TranslationIndex index;
};

inline TranslatedField translate_field(const Field& g, const TranslationIndex& idx) {
    detail::check_shift(g, idx.k);
    return {&g, idx};
}

/// <T_a f, T_b g> with the weight |lambda| dlambda dt.
inline cplx inner_product(const TranslatedField& a, const TranslatedField& b) {
    const auto ov = cell_overlaps(*a.base, a.index.k, *b.base, b.index.k);
    return overlap_integral(ov, b.index.l - a.index.l, static_cast<double>(b.index.m - a.index.m));
}

/// <f, T_idx g>. Throws MisalignedShift when g has a uniform t-grid and k is
/// not a multiple of its step.
inline cplx inner_product(const Field& f, const Field& g, const TranslationIndex& idx = {}) {
    detail::check_shift(g, idx.k);
    return inner_product(TranslatedField{&f, {}}, TranslatedField{&g, idx});
}

inline double norm2(const TranslatedField& f) { return inner_product(f, f).real(); }

}  // namespace heisen
