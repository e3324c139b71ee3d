#include <random>

#include <gtest/gtest.h>

#include "heisen/oscillatory.hpp"

using namespace heisen;

namespace {

template <typename Fn>
cplx simpson(Fn&& fn, double a, double b, int n = 4000) {
    const double h = (b - a) / n;
    cplx s = fn(a) + fn(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * fn(a + i * h);
    return s * h / 3.0;
}

}  // namespace

TEST(Oscillatory, SincAndMomentSeriesAreContinuous) {
    EXPECT_EQ(sinc(0.0), 1.0);
    EXPECT_EQ(sinc_moment(0.0), 0.0);
    for (double x : {1e-3, 0.25}) {
        const double below = std::nextafter(x, 0.0);
        EXPECT_NEAR(sinc(below), sinc(x), 1e-15);
        EXPECT_NEAR(sinc_moment(below), sinc_moment(x), 1e-15);
        EXPECT_NEAR(sinc_moment(-x), -sinc_moment(x), 0);
    }
    for (double x : {0.01, 0.1, 0.2, 0.249}) {
        const double direct = (std::sin(x) - x * std::cos(x)) / (x * x);
        EXPECT_NEAR(sinc_moment(x), direct, 1e-12);
    }
}

TEST(Oscillatory, ClosedFormsMatchQuadrature) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(-3, 3), len(0.01, 2), freq(-40, 40);
    for (int i = 0; i < 100; ++i) {
        const double a = pos(rng), b = a + len(rng);
        const double w = i % 10 == 0 ? 0.0 : freq(rng);
        const auto e = exp_integral(a, b, w);
        const auto le = lin_exp_integral(a, b, w);
        EXPECT_LE(std::abs(e - simpson([&](double x) { return cis(w * x); }, a, b)), 1e-10);
        EXPECT_LE(std::abs(le - simpson([&](double x) { return x * cis(w * x); }, a, b)), 1e-10);
    }
    // tiny w h, where the naive (e^{iwb} - e^{iwa}) / (iw) form cancels
    const double b = 1.0 + 1e-9;
    EXPECT_NEAR(std::abs(exp_integral(1.0, b, 1e-3)), b - 1.0, 1e-24);
    EXPECT_NEAR(lin_exp_integral(0, 2, 0).real(), 2.0, 1e-15);
}

TEST(Oscillatory, RectangleKernelMatchesQuadrature) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> lam(0.05, 1.5), len(0.01, 0.5), t(-3, 3), tl(0.1, 2);
    std::uniform_int_distribution<int> lm(-6, 6);
    for (int i = 0; i < 60; ++i) {
        double a = lam(rng), b = a + len(rng);
        if (i % 2) {
            std::swap(a, b);
            a = -a;
            b = -b;
        }
        const double t0 = t(rng), t1 = t0 + tl(rng);
        const double l = lm(rng), m = lm(rng);
        const auto kernel = rectangle_kernel(a, b, t0, t1, l, m);
        // integrate over t in closed form, lambda by Simpson
        const auto ref = simpson(
            [&](double x) { return std::abs(x) * cis(-two_pi * x * m) * exp_integral(t0, t1, two_pi * x * l); }, a, b);
        EXPECT_LE(std::abs(kernel - ref), 1e-10) << "l=" << l << " m=" << m;
    }
}
