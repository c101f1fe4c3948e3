#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lrdfa/error.hpp"
#include "lrdfa/events.hpp"

using namespace lrdfa;

namespace {

std::vector<Event> events_from(std::initializer_list<std::pair<double, int>> durations_counts,
                               State s = State::Immobile, double dt = 0.5) {
    std::vector<Event> out;
    for (const auto& [d, count] : durations_counts) {
        for (int i = 0; i < count; ++i) {
            out.push_back({s, 0, static_cast<std::size_t>(std::llround(d / dt)), d});
        }
    }
    return out;
}

DurationHistogram exact_hist(const std::vector<std::pair<double, double>>& bins) {
    DurationHistogram h;
    for (const auto& [d, f] : bins) h.bins.push_back({d, f});
    return h;
}

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed, double p_switch = 0.3) {
    std::mt19937_64 g(seed);
    std::bernoulli_distribution flip(p_switch);
    std::vector<std::uint8_t> v(n);
    std::uint8_t cur = 0;
    for (auto& b : v) {
        if (flip(g)) cur = static_cast<std::uint8_t>(1 - cur);
        b = cur;
    }
    return v;
}

}  // namespace

TEST(ExtractEvents, AllZeros) {
    const auto r = extract_events(BehaviorSeries(std::vector<std::uint8_t>(100, 0), 0.5));
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0].state, State::Immobile);
    EXPECT_DOUBLE_EQ(r.events[0].duration_s, 50.0);
}

TEST(ExtractEvents, HandExample) {
    const auto r = extract_events(BehaviorSeries({0, 0, 1, 1, 1, 0, 0, 0, 1}, 0.5), 0.6);
    ASSERT_EQ(r.events.size(), 3u);
    EXPECT_EQ(r.events[0].state, State::Immobile);
    EXPECT_DOUBLE_EQ(r.events[0].duration_s, 1.0);
    EXPECT_EQ(r.events[1].state, State::Mobile);
    EXPECT_DOUBLE_EQ(r.events[1].duration_s, 1.5);
    EXPECT_EQ(r.events[2].state, State::Immobile);
    EXPECT_DOUBLE_EQ(r.events[2].duration_s, 1.5);
    EXPECT_EQ(r.events[1].start, 2u);
}

TEST(ExtractEvents, ThresholdIsStrict) {
    // 2 * 0.3 s is 0.6 s up to rounding and must not count as longer than 0.6 s.
    const auto r = extract_events(BehaviorSeries({1, 1, 0, 0, 0}, 0.3), 0.6);
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0].state, State::Immobile);
}

TEST(ExtractEvents, ZeroThresholdKeepsEveryRun) {
    const auto v = random_bits(500, 3);
    const auto r = extract_events(BehaviorSeries(v, 1.0 / 3.0), 0.0);
    std::size_t runs = 1;
    for (std::size_t i = 1; i < v.size(); ++i) runs += v[i] != v[i - 1];
    EXPECT_EQ(r.events.size(), runs);
    std::size_t total = 0;
    for (const auto& e : r.events) total += e.samples;
    EXPECT_EQ(total, v.size());
}

TEST(ExtractEvents, Properties) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const BehaviorSeries s(random_bits(400, seed), 0.5);
        const auto r = extract_events(s, 0.6);
        double total = 0.0;
        for (std::size_t i = 0; i < r.events.size(); ++i) {
            EXPECT_GT(r.events[i].duration_s, 0.6);
            total += r.events[i].duration_s;
            if (i > 0 && r.events[i].state == r.events[i - 1].state) {
                // Same state twice in a row only across a dropped run.
                EXPECT_GT(r.events[i].start, r.events[i - 1].start + r.events[i - 1].samples);
            }
        }
        EXPECT_LE(total, s.duration_s() + 1e-9);

        // Re-extracting from the reconstruction gives the same events.
        const auto again = extract_events(reconstruct(r), 0.6);
        ASSERT_EQ(again.events.size(), r.events.size());
        for (std::size_t i = 0; i < r.events.size(); ++i) {
            EXPECT_EQ(again.events[i].state, r.events[i].state);
            EXPECT_EQ(again.events[i].samples, r.events[i].samples);
        }
    }
}

TEST(Histogram, Counting) {
    const auto ev = events_from({{1.0, 3}, {2.0, 1}});
    const auto h = duration_histogram(ev, State::Immobile);
    ASSERT_EQ(h.bins.size(), 2u);
    EXPECT_DOUBLE_EQ(h.bins[0].duration_s, 1.0);
    EXPECT_DOUBLE_EQ(h.bins[0].frequency, 3.0);
    EXPECT_DOUBLE_EQ(h.bins[1].duration_s, 2.0);
    EXPECT_DOUBLE_EQ(h.bins[1].frequency, 1.0);
    EXPECT_EQ(h.events, 4u);
}

TEST(Histogram, PoolingUnion) {
    EventRuns a;
    a.events = events_from({{1.0, 2}, {3.0, 1}});
    EventRuns b;
    b.events = events_from({{1.5, 4}, {2.0, 1}});
    const std::vector<EventRuns> subjects{a, b};
    const auto h = duration_histogram(subjects, State::Immobile);
    EXPECT_EQ(h.pooled_subjects, 2u);
    ASSERT_EQ(h.bins.size(), 4u);
    double total = 0.0;
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
        total += h.bins[i].frequency;
        if (i > 0) EXPECT_GT(h.bins[i].duration_s, h.bins[i - 1].duration_s);
    }
    EXPECT_DOUBLE_EQ(total, 8.0);
    // Order of subjects does not matter.
    const std::vector<EventRuns> swapped{b, a};
    const auto h2 = duration_histogram(swapped, State::Immobile);
    ASSERT_EQ(h2.bins.size(), h.bins.size());
    for (std::size_t i = 0; i < h.bins.size(); ++i) EXPECT_EQ(h2.bins[i].frequency, h.bins[i].frequency);
}

TEST(Histogram, Empty) {
    const auto ev = events_from({{1.0, 3}}, State::Immobile);
    try {
        (void)duration_histogram(ev, State::Mobile);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyHistogram);
    }
}

TEST(Histogram, LogBinsConserveEvents) {
    std::vector<Event> ev;
    for (std::size_t k = 2; k < 400; ++k) ev.push_back({State::Mobile, 0, k, 0.5 * static_cast<double>(k)});
    HistogramOptions o;
    o.binning = Binning::Logarithmic;
    o.min_count = 1;
    const auto h = duration_histogram(ev, State::Mobile, o);
    // One event per step: every bin has density exactly 1.
    for (const auto& b : h.bins) EXPECT_DOUBLE_EQ(b.frequency, 1.0);
    for (std::size_t i = 1; i < h.bins.size(); ++i) EXPECT_GT(h.bins[i].duration_s, h.bins[i - 1].duration_s);
}

TEST(Fits, ExactPowerLaw) {
    std::vector<std::pair<double, double>> bins;
    for (int d = 1; d <= 10; ++d) bins.emplace_back(d, 1000.0 * std::pow(d, -2.0));
    const auto h = exact_hist(bins);
    const auto f = fit_power_law(h);
    EXPECT_NEAR(f.slope, -2.0, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_EQ(classify_distribution(h).verdict, DistributionClass::PowerLaw);
}

TEST(Fits, ExactExponential) {
    std::vector<std::pair<double, double>> bins;
    for (int i = 1; i <= 12; ++i) bins.emplace_back(i * 0.5, 1e4 * std::pow(10.0, -0.22 * i * 0.5));
    const auto h = exact_hist(bins);
    const auto f = fit_exponential(h);
    EXPECT_NEAR(f.slope, -0.22, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    const auto c = classify_distribution(h);
    EXPECT_EQ(c.verdict, DistributionClass::Exponential);
    EXPECT_TRUE(c.exponential.winner);
    EXPECT_FALSE(c.power_law.winner);
}

TEST(Fits, TooFewBins) {
    const auto h = exact_hist({{1.0, 3.0}, {2.0, 1.0}});
    EXPECT_THROW((void)fit_power_law(h), Error);
    try {
        (void)fit_exponential(h);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientBins);
    }
}

TEST(Fits, ScaleInvarianceOfFrequencies) {
    std::vector<std::pair<double, double>> bins{{1, 50}, {2, 20}, {3, 9}, {5, 4}, {8, 1}};
    const auto a = fit_power_law(exact_hist(bins));
    for (auto& b : bins) b.second *= 7.5;
    const auto b = fit_power_law(exact_hist(bins));
    EXPECT_NEAR(a.slope, b.slope, 1e-12);
    EXPECT_NEAR(b.intercept - a.intercept, std::log10(7.5), 1e-12);
}

TEST(Fits, ClassificationUnitInvariance) {
    std::mt19937_64 g(8);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<std::pair<double, double>> seconds;
        std::vector<std::pair<double, double>> samples;
        for (int k = 1; k <= 15; ++k) {
            const double f = std::max(1.0, std::round(500.0 * std::pow(k, -1.5) * (0.7 + 0.6 * (g() % 1000) / 1000.0)));
            seconds.emplace_back(k / 3.0, f);
            samples.emplace_back(k, f);
        }
        const auto a = classify_distribution(exact_hist(seconds));
        const auto b = classify_distribution(exact_hist(samples));
        EXPECT_EQ(a.verdict, b.verdict);
        EXPECT_NEAR(a.power_law.slope, b.power_law.slope, 1e-9);
        EXPECT_NEAR(a.exponential.r2, b.exponential.r2, 1e-9);
    }
}

TEST(Fits, InconclusiveMargin) {
    std::vector<std::pair<double, double>> bins;
    for (int d = 1; d <= 10; ++d) bins.emplace_back(d, 1000.0 * std::pow(d, -2.0));
    EXPECT_EQ(classify_distribution(exact_hist(bins), 2.0).verdict, DistributionClass::Inconclusive);
}

TEST(Fits, PowerLawSamplerFavoursLogLog) {
    // Discrete power law, exponent -2, by inverse transform on a long truncated support.
    std::vector<double> cdf;
    double z = 0.0;
    for (int k = 1; k <= 100000; ++k) {
        z += std::pow(k, -2.0);
        cdf.push_back(z);
    }
    std::mt19937_64 g(21);
    std::uniform_real_distribution<double> u(0.0, z);
    std::vector<Event> ev;
    for (int i = 0; i < 10000; ++i) {
        const auto k = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u(g)) - cdf.begin()) + 1;
        ev.push_back({State::Immobile, 0, k, static_cast<double>(k)});
    }
    HistogramOptions o;
    o.binning = Binning::Logarithmic;
    const auto h = duration_histogram(ev, State::Immobile, o);
    const auto c = classify_distribution(h);
    EXPECT_EQ(c.verdict, DistributionClass::PowerLaw);
    EXPECT_NEAR(c.power_law.slope, -2.0, 0.15);
    EXPECT_LT(c.exponential.r2, c.power_law.r2);
}

TEST(Summary, MeanAndStandardError) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(s.count, 4u);
    EXPECT_EQ(summarize(std::vector<double>{3.0}).se, 0.0);
}
