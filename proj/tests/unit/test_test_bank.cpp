#include <gtest/gtest.h>

#include "heisen/test_bank.hpp"

using namespace heisen;

namespace {

bool same_field(const Field& a, const Field& b) {
    if (a.cells() != b.cells() || a.rows().size() != b.rows().size()) return false;
    for (std::size_t i = 0; i < a.rows().size(); ++i)
        if (a.rows()[i].nodes != b.rows()[i].nodes || a.rows()[i].values != b.rows()[i].values) return false;
    return true;
}

}  // namespace

TEST(TestBank, DeterministicInSeed) {
    BankSpec spec;
    spec.support = shannon_set();
    const auto a = make_test_bank(spec, 7, 6), b = make_test_bank(spec, 7, 6), c = make_test_bank(spec, 8, 6);
    ASSERT_EQ(a.functions.size(), 6u);
    EXPECT_EQ(a.ids, b.ids);
    bool any_diff = false;
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_TRUE(same_field(a.functions[i], b.functions[i]));
        any_diff = any_diff || !same_field(a.functions[i], c.functions[i]);
    }
    EXPECT_TRUE(any_diff);
    EXPECT_EQ(a.ids[0], "random_smooth_0");
    EXPECT_EQ(a.ids[2], "cell_indicator_2");
}

TEST(TestBank, FunctionsLiveOnTheSupport) {
    BankSpec spec;
    spec.support = IntervalUnion::normalize({{Rational(3, 8), Rational(3, 4)}, {Rational(-3, 4), Rational(-3, 8)}});
    spec.kinds = {BankKind::RandomSmooth, BankKind::GaussianPiece, BankKind::CellIndicator, BankKind::RandomPiecewise};
    const auto bank = make_test_bank(spec, 3, 12);
    for (const auto& f : bank.functions) {
        EXPECT_GT(norm2(f), 0);
        EXPECT_TRUE(is_subset(f.support(), spec.support));
        ASSERT_TRUE(f.uniform_t().has_value());
        EXPECT_EQ(f.uniform_t()->n_t, 20u);
    }
    // a cell indicator has one coarse block: lambda width 1/4 (clipped to the support), t width 1
    const auto& ind = bank.functions[2];
    double area = 0;
    for (std::size_t i = 0; i < ind.cells().size(); ++i)
        for (std::size_t k = 0; k < ind.rows()[i].values.size(); ++k)
            if (std::abs(ind.rows()[i].values[k]) > 0)
                area += ind.cells()[i].width() * (ind.rows()[i].nodes[k + 1] - ind.rows()[i].nodes[k]);
    EXPECT_GT(area, 0);
    EXPECT_LE(area, 0.25 + 1e-12);
}

TEST(TestBank, RejectsBadSpecs) {
    BankSpec spec;
    EXPECT_THROW(make_test_bank(spec, 1, 4), Error);  // empty support
    spec.support = shannon_set();
    EXPECT_THROW(make_test_bank(spec, 1, 0), Error);
    spec.kinds.clear();
    EXPECT_THROW(make_test_bank(spec, 1, 2), Error);
}

TEST(LineBank, DeterministicAndNonzero) {
    const LineBankSpec spec;
    const auto a = make_line_bank(spec, 3, 9), b = make_line_bank(spec, 3, 9);
    ASSERT_EQ(a.lines.size(), 9u);
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(a.lines[i].values, b.lines[i].values);
        EXPECT_GT(a.lines[i].norm2(), 0);
        EXPECT_EQ(a.lines[i].nodes.front(), -4.0);
        EXPECT_EQ(a.lines[i].nodes.back(), 4.0);
    }
    EXPECT_NEAR(a.lines[2].norm2(), 1.0, 1e-15);  // one unit cell indicator
}
