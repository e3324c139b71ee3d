#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "heisen/error.hpp"

namespace heisen {

using cplx = std::complex<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Element (x1, x2, x3) of the polarized Heisenberg group.
struct GroupElement {
    double x1 = 0, x2 = 0, x3 = 0;
};

// (x1+y1, x2+y2, x3+y3+x1*y2)
inline GroupElement multiply(const GroupElement& x, const GroupElement& y) {
    return {x.x1 + y.x1, x.x2 + y.x2, x.x3 + y.x3 + x.x1 * y.x2};
}

inline GroupElement inverse(const GroupElement& x) { return {-x.x1, -x.x2, -x.x3 + x.x1 * x.x2}; }

inline GroupElement dilate_element(double a, const GroupElement& x) {
    if (!(a > 0)) throw Error(ErrorKind::NonpositiveScale, "dilation factor must be positive");
    const double r = std::sqrt(a);
    return {r * x.x1, r * x.x2, a * x.x3};
}

/// Piecewise-constant function on cells [t_min + n*dt, t_min + (n+1)*dt).
struct SampledLine {
    double t_min = 0;
    double dt = 1;
    std::vector<cplx> values;

    double t_max() const { return t_min + dt * static_cast<double>(values.size()); }
    double midpoint(std::size_t n) const { return t_min + (static_cast<double>(n) + 0.5) * dt; }

    double norm2() const {
        double s = 0;
        for (const auto& v : values) s += std::norm(v);
        return s * dt;
    }
};

namespace detail {

// Number of grid steps in `shift`, or MisalignedShift.
inline long long grid_steps(double shift, double dt) {
    const double q = shift / dt;
    const double r = std::nearbyint(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
        throw Error(ErrorKind::MisalignedShift,
                    "shift " + std::to_string(shift) + " is not a multiple of dt " + std::to_string(dt));
    return static_cast<long long>(r);
}

}  // namespace detail

/// pi_lambda(x) f (t) = e^{2 pi i lambda x3} e^{-2 pi i lambda x2 t} f(t - x1).
/// The shift moves the grid by whole cells; the modulation is sampled at cell
/// midpoints, which makes the representation law hold up to rounding.
inline SampledLine schrodinger(double lambda, const GroupElement& x, const SampledLine& f) {
    if (lambda == 0) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
    if (!(f.dt > 0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    const long long steps = detail::grid_steps(x.x1, f.dt);

    SampledLine out;
    out.dt = f.dt;
    out.t_min = f.t_min + static_cast<double>(steps) * f.dt;
    out.values.resize(f.values.size());
    const cplx central = std::polar(1.0, two_pi * lambda * x.x3);
    for (std::size_t n = 0; n < f.values.size(); ++n) {
        const double t = out.midpoint(n);
        out.values[n] = central * std::polar(1.0, -two_pi * lambda * x.x2 * t) * f.values[n];
    }
    return out;
}

}  // namespace heisen
