#include <numbers>

#include <gtest/gtest.h>

#include "heisen/admissibility.hpp"
#include "heisen/gabor.hpp"

using namespace heisen;

TEST(Calderon, ShannonIndicatorGivesLn2) {
    const auto g = indicator_gabor_field(shannon_set(), 1, 1, Rational(1, 4));
    EXPECT_NEAR(calderon_integral(g, 1), std::numbers::ln2, 1e-15);
    EXPECT_NEAR(calderon_integral(g, -1), std::numbers::ln2, 1e-15);
    // the grid does not matter
    const auto fine = indicator_gabor_field(shannon_set(), 1, 1, Rational(1, 1000));
    EXPECT_NEAR(calderon_integral(fine, 1), std::numbers::ln2, 1e-13);
    EXPECT_NEAR(calderon_integral(g.scaled(2.0), 1), 4 * std::numbers::ln2, 1e-14);
}

TEST(Calderon, TouchingZeroDiverges) {
    const auto g = indicator_gabor_field(IntervalUnion::single(0, 1), 1, 1, Rational(1, 4));
    try {
        calderon_integral(g, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TouchesZero);
    }
    EXPECT_EQ(calderon_integral(g, -1), 0.0);
}

TEST(Admissibility, NecessaryCondition) {
    const auto g = indicator_gabor_field(shannon_set(), 1, 1, Rational(1, 4));
    const auto r = check_necessary_condition(g, 1, 1, 1, 1);
    EXPECT_TRUE(r.pass());
    EXPECT_NEAR(r.admissible_scale, 1 / std::sqrt(std::numbers::ln2), 1e-15);
    const auto scaled = check_necessary_condition(g.scaled(1.1), 1, 1, 1, 1);
    EXPECT_FALSE(scaled.pass());
    EXPECT_TRUE(check_necessary_condition(g.scaled(1.1), 1, 1.3, 1, 1).pass());

    // alpha = 2, beta = 1/2 keeps the band and the integrals
    const auto h = indicator_gabor_field(shannon_set(), 2, 0.5, Rational(1, 4));
    EXPECT_TRUE(check_necessary_condition(h, 1, 1, 2, 0.5).pass());

    try {
        check_necessary_condition(g, 2, 1, 1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadBounds);
    }
    EXPECT_THROW(check_necessary_condition(g, 0, 1, 1, 1), Error);
    const auto j = to_json(r);
    EXPECT_EQ(j["pass"], true);
    EXPECT_EQ(j["target"].size(), 2u);
}

TEST(Admissibility, GaborWaveletConsistency) {
    const auto s = shannon_set();
    EXPECT_TRUE(gabor_wavelet_consistency(s, indicator_gabor_field(s, 1, 1, Rational(1, 4)), 1, 1).consistent);
    const auto ex = IntervalUnion::normalize({{Rational(3, 8), Rational(3, 4)}, {Rational(-3, 4), Rational(-3, 8)}});
    const auto r = gabor_wavelet_consistency(ex, indicator_gabor_field(ex, 1, 1, Rational(1, 8)), 1, 1);
    EXPECT_TRUE(r.consistent);
    EXPECT_NEAR(r.log_measure_pos, std::numbers::ln2, 1e-15);

    // [1/2, 3/4) has the right Calderon identity but the wrong log-measure
    const auto half = IntervalUnion::normalize({{Rational(1, 2), Rational(3, 4)}, {Rational(-3, 4), Rational(-1, 2)}});
    const auto bad = gabor_wavelet_consistency(half, indicator_gabor_field(half, 1, 1, Rational(1, 8)), 1, 1);
    EXPECT_FALSE(bad.consistent);
    EXPECT_NEAR(bad.calderon_pos, bad.log_measure_pos, 1e-14);

    // wrong fiber norms
    EXPECT_FALSE(gabor_wavelet_consistency(s, indicator_gabor_field(s, 1, 1, Rational(1, 4)).scaled(0.5), 1, 1)
                     .consistent);
}
