#pragma once

// Brute-force reference for <f, T_{k,l,m} g>: composite Simpson in lambda and
// t on every rectangle where f conj(g(. - k)) is constant. Field values are
// looked up by linear scan at rectangle centres.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "heisen/field.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline cplx lookup(const heisen::Field& f, double lam, double t) {
    for (std::size_t i = 0; i < f.cells().size(); ++i) {
        const auto& c = f.cells()[i];
        if (c.lo <= lam && lam < c.hi) {
            const auto& r = f.rows()[i];
            for (std::size_t k = 0; k < r.values.size(); ++k)
                if (r.nodes[k] <= t && t < r.nodes[k + 1]) return r.values[k];
            return 0.0;
        }
    }
    return 0.0;
}

inline std::vector<double> row_nodes(const heisen::Field& f, double lam) {
    for (std::size_t i = 0; i < f.cells().size(); ++i)
        if (f.cells()[i].lo <= lam && lam < f.cells()[i].hi) return f.rows()[i].nodes;
    return {};
}

inline int even_points(double share, int total) {
    int n = std::max(2, static_cast<int>(std::lround(share * total)));
    return n + (n % 2);
}

/// points: total Simpson intervals per axis, spread over the pieces.
inline cplx simpson_inner(const heisen::Field& f, const heisen::Field& g, double k, double l, double m,
                          int points = 10000) {
    const double tau = 2 * std::numbers::pi;
    std::vector<double> lam_pts;
    for (const auto* h : {&f, &g})
        for (const auto& c : h->cells()) {
            lam_pts.push_back(c.lo);
            lam_pts.push_back(c.hi);
        }
    std::sort(lam_pts.begin(), lam_pts.end());
    lam_pts.erase(std::unique(lam_pts.begin(), lam_pts.end()), lam_pts.end());
    double lam_total = 0;
    for (std::size_t i = 0; i + 1 < lam_pts.size(); ++i) lam_total += lam_pts[i + 1] - lam_pts[i];

    cplx total = 0;
    for (std::size_t i = 0; i + 1 < lam_pts.size(); ++i) {
        const double a = lam_pts[i], b = lam_pts[i + 1], mid = 0.5 * (a + b);
        std::vector<double> tp = row_nodes(f, mid);
        for (double x : row_nodes(g, mid)) tp.push_back(x + k);
        if (tp.size() < 2) continue;
        std::sort(tp.begin(), tp.end());
        tp.erase(std::unique(tp.begin(), tp.end()), tp.end());

        struct Seg { double t0, t1; cplx coef; };
        std::vector<Seg> segs;
        double t_total = 0;
        for (std::size_t s = 0; s + 1 < tp.size(); ++s) {
            const double tm = 0.5 * (tp[s] + tp[s + 1]);
            const cplx coef = lookup(f, mid, tm) * std::conj(lookup(g, mid, tm - k));
            if (coef == cplx(0.0)) continue;
            segs.push_back({tp[s], tp[s + 1], coef});
            t_total += tp[s + 1] - tp[s];
        }
        if (segs.empty()) continue;

        const int nl = even_points((b - a) / lam_total, points);
        const double hl = (b - a) / nl;
        cplx lam_sum = 0;
        for (int p = 0; p <= nl; ++p) {
            const double lam = a + p * hl;
            const double wl = (p == 0 || p == nl) ? 1 : (p % 2 ? 4 : 2);
            cplx t_sum = 0;
            for (const auto& s : segs) {
                const int nt = even_points((s.t1 - s.t0) / t_total, points);
                const double ht = (s.t1 - s.t0) / nt;
                // phase recurrence along t
                const cplx step = std::polar(1.0, tau * lam * l * ht);
                cplx ph = std::polar(1.0, tau * lam * l * s.t0);
                cplx acc = 0;
                for (int q = 0; q <= nt; ++q) {
                    const double wt = (q == 0 || q == nt) ? 1 : (q % 2 ? 4 : 2);
                    acc += wt * ph;
                    ph *= step;
                }
                t_sum += s.coef * acc * (ht / 3);
            }
            lam_sum += wl * std::abs(lam) * std::polar(1.0, -tau * lam * m) * t_sum;
        }
        total += lam_sum * (hl / 3);
    }
    return total;
}

}  // namespace oracle
