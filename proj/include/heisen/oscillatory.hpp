#pragma once

// Closed forms for the cell integrals of e^{i w x} and x e^{i w x}, written
// around the cell midpoint so that small w*h does not cancel.

#include <cmath>
#include <complex>

#include "heisen/heisenberg_group.hpp"

namespace heisen {

inline cplx cis(double theta) noexcept { return {std::cos(theta), std::sin(theta)}; }

/// sin(x)/x
inline double sinc(double x) noexcept {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// (sin x - x cos x) / x^2, odd, ~ x/3 near 0.
inline double sinc_moment(double x) noexcept {
    if (std::abs(x) < 0.25) {
        // sum_{n>=1} (-1)^{n+1} 2n x^{2n-1} / (2n+1)!
        const double x2 = x * x;
        return x * (1.0 / 3.0 +
                    x2 * (-1.0 / 30.0 +
                          x2 * (1.0 / 840.0 +
                                x2 * (-1.0 / 45360.0 + x2 * (1.0 / 3991680.0 - x2 / 518918400.0)))));
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x);
}

/// Integral of e^{i w x} over [a, b].
inline cplx exp_integral(double a, double b, double w) noexcept {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    return 2.0 * h * sinc(w * h) * cis(w * c);
}

/// Integral of x e^{i w x} over [a, b].
inline cplx lin_exp_integral(double a, double b, double w) noexcept {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double x = w * h;
    // int_{-h}^{h} (c + s) e^{i w s} ds = 2h c sinc(x) + 2i h^2 q(x)
    const cplx inner(2.0 * h * c * sinc(x), 2.0 * h * h * sinc_moment(x));
    return cis(w * c) * inner;
}

/// Integral of |lambda| e^{-2 pi i lambda m} e^{2 pi i lambda l t} over the
/// rectangle [a,b) x [t0,t1). The lambda-cell must not contain 0.
inline cplx rectangle_kernel(double a, double b, double t0, double t1, double l, double m) noexcept {
    const double s = (a + b) < 0 ? -1.0 : 1.0;
    if (l == 0) return s * (t1 - t0) * lin_exp_integral(a, b, -two_pi * m);
    const cplx pre = s / cplx(0.0, two_pi * l);
    return pre * (exp_integral(a, b, two_pi * (l * t1 - m)) - exp_integral(a, b, two_pi * (l * t0 - m)));
}

}  // namespace heisen
