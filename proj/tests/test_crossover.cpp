#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lrdfa/dfa.hpp"
#include "lrdfa/error.hpp"
#include "lrdfa/surrogate.hpp"

using namespace lrdfa;

namespace {

// log10 F = piecewise linear in log10 n with a kink at `brk`, optional Gaussian log noise.
FluctuationCurve two_slope(double a1, double a2, double brk, double sigma, std::uint64_t seed,
                           double lo = 0.9, double hi = 4.3) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    FluctuationCurve c;
    std::size_t last = 0;
    for (double x = lo; x <= hi + 1e-9; x += 1.0 / 15.0) {
        const auto n = static_cast<std::size_t>(std::llround(std::pow(10.0, x)));
        if (n <= last) continue;
        last = n;
        const double lx = std::log10(static_cast<double>(n));
        const double ly = (lx <= brk ? a1 * (lx - brk) : a2 * (lx - brk)) + (sigma > 0 ? noise(g) : 0.0);
        c.points.push_back({n, std::pow(10.0, ly)});
    }
    return c;
}

SweepOrderResult order_result(int m, bool crossover, double brk = 3.0) {
    SweepOrderResult r;
    r.order = m;
    r.crossover.has_crossover = crossover;
    r.crossover.break_log10_n = brk;
    return r;
}

}  // namespace

TEST(Crossover, ExactPowerLawHasNone) {
    const auto c = two_slope(0.8, 0.8, 2.5, 0.0, 1);
    const auto r = detect_crossover(c);
    EXPECT_FALSE(r.has_crossover);
    EXPECT_LE(r.delta_bic, 6.0);
}

TEST(Crossover, TwoSlopesWithNoise) {
    const auto c = two_slope(1.0, 0.4, 2.8, 0.02, 7);
    const auto r = detect_crossover(c);
    ASSERT_TRUE(r.has_crossover);
    EXPECT_NEAR(r.break_log10_n, 2.8, 0.15);
    EXPECT_NEAR(r.alpha1, 1.0, 0.05);
    EXPECT_NEAR(r.alpha2, 0.4, 0.05);
    EXPECT_GT(r.r2_1, 0.9);
    EXPECT_GT(r.r2_2, 0.9);
}

TEST(Crossover, NoiselessKinkIsExact) {
    const auto c = two_slope(0.97, 0.42, 2.9, 0.0, 1);
    const auto r = detect_crossover(c);
    ASSERT_TRUE(r.has_crossover);
    EXPECT_NEAR(r.break_log10_n, 2.9, 1.0 / 120.0);
    EXPECT_NEAR(r.alpha1, 0.97, 0.02);
    EXPECT_NEAR(r.alpha2, 0.42, 0.02);
}

TEST(Crossover, BreakpointStaysInsideFittedRange) {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> slope(0.2, 1.4);
    std::uniform_real_distribution<double> brk(1.0, 4.2);
    for (int i = 0; i < 300; ++i) {
        const auto c = two_slope(slope(g), slope(g), brk(g), 0.05, g());
        const auto r = detect_crossover(c);
        const double lo = std::log10(static_cast<double>(c.points.front().n));
        const double hi = std::log10(static_cast<double>(c.points.back().n));
        EXPECT_GT(r.break_log10_n, lo);
        EXPECT_LT(r.break_log10_n, hi);
        if (r.has_crossover) {
            std::size_t left = 0;
            std::size_t right = 0;
            for (const auto& p : c.points) {
                const double x = std::log10(static_cast<double>(p.n));
                left += x <= r.break_log10_n;
                right += x >= r.break_log10_n;
            }
            EXPECT_GE(left, 3u);
            EXPECT_GE(right, 3u);
        }
    }
}

TEST(Crossover, SmallSlopeChangeIsNotReported) {
    const auto c = two_slope(0.8, 0.7, 2.5, 0.0, 1);
    const auto r = detect_crossover(c);
    EXPECT_GT(r.delta_bic, 6.0);
    EXPECT_FALSE(r.has_crossover);
    CrossoverOptions lax;
    lax.min_slope_change = 0.0;
    EXPECT_TRUE(detect_crossover(c, lax).has_crossover);
}

TEST(Crossover, TooFewPoints) {
    FluctuationCurve c;
    for (std::size_t n = 8; n < 15; ++n) c.points.push_back({n, static_cast<double>(n)});
    try {
        (void)detect_crossover(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientPoints);
    }
}

TEST(Crossover, NarrowRangeCannotHostTwoSegments) {
    const auto c = two_slope(1.0, 0.2, 1.4, 0.0, 1, 0.9, 1.8);
    const auto r = detect_crossover(c);
    EXPECT_FALSE(r.has_crossover);
}

TEST(ClassifySweep, Rules) {
    const std::vector<SweepOrderResult> none{order_result(1, false), order_result(2, false)};
    EXPECT_EQ(classify_sweep(none), SweepClass::NoCrossover);

    const std::vector<SweepOrderResult> art{order_result(1, true), order_result(2, true, 2.0),
                                            order_result(3, false), order_result(4, false)};
    EXPECT_EQ(classify_sweep(art), SweepClass::Artificial);
    EXPECT_EQ(recommend_order(art), 3);

    const std::vector<SweepOrderResult> pers{order_result(1, true, 3.0), order_result(2, true, 3.1),
                                             order_result(3, true, 2.85), order_result(4, true, 3.15)};
    EXPECT_EQ(classify_sweep(pers), SweepClass::Persistent);
    EXPECT_FALSE(recommend_order(pers).has_value());

    const std::vector<SweepOrderResult> spread{order_result(1, true, 2.0), order_result(2, true, 3.0)};
    EXPECT_EQ(classify_sweep(spread), SweepClass::Inconclusive);

    const std::vector<SweepOrderResult> late{order_result(1, false), order_result(2, true)};
    EXPECT_EQ(classify_sweep(late), SweepClass::Inconclusive);
    EXPECT_FALSE(recommend_order(late).has_value());
}

TEST(DetrendingSweep, QuadraticTrendIsArtificial) {
    auto x = gen_arfima({0.3}, 32400, 101);
    TrendSpec t;
    t.kind = TrendSpec::Kind::Polynomial;
    t.amplitude = 20.0;
    t.power = 2.0;
    x = add_trend(x, t);
    const std::vector<int> orders{1, 2, 3, 4};
    const auto sweep = detrending_sweep(x, orders);
    ASSERT_EQ(sweep.orders.size(), 4u);
    EXPECT_TRUE(sweep.orders[0].crossover.has_crossover);
    EXPECT_FALSE(sweep.orders[2].crossover.has_crossover);
    EXPECT_FALSE(sweep.orders[3].crossover.has_crossover);
    EXPECT_EQ(sweep.classification, SweepClass::Artificial);
    ASSERT_TRUE(sweep.recommended_order.has_value());
    EXPECT_LE(*sweep.recommended_order, 3);
}

TEST(DetrendingSweep, PureSurrogateHasNoCrossover) {
    const auto x = gen_arfima({0.3}, 32400, 102);
    const std::vector<int> orders{4, 1, 3, 2, 3};
    const auto sweep = detrending_sweep(x, orders);
    ASSERT_EQ(sweep.orders.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(sweep.orders[i].order, static_cast<int>(i) + 1);
    EXPECT_EQ(sweep.classification, SweepClass::NoCrossover);
    EXPECT_EQ(sweep.recommended_order, 1);
}

TEST(DetrendingSweep, EmptyOrders) {
    const auto x = gen_arfima({0.0}, 1000, 1);
    EXPECT_THROW((void)detrending_sweep(x, std::vector<int>{}), Error);
}
