#include "lrdfa/events.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lrdfa/error.hpp"
#include "lrdfa/regression.hpp"

namespace lrdfa {

std::string to_string(State s) { return s == State::Mobile ? "mobile" : "immobile"; }

std::string to_string(Family f) { return f == Family::PowerLaw ? "power_law" : "exponential"; }

std::string to_string(DistributionClass c) {
    switch (c) {
        case DistributionClass::PowerLaw: return "power_law";
        case DistributionClass::Exponential: return "exponential";
        case DistributionClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

EventRuns extract_events(const BehaviorSeries& s, double min_duration_s) {
    if (!(min_duration_s >= 0.0) || !std::isfinite(min_duration_s)) {
        throw Error(ErrorCode::InvalidInput, "minimum event duration must be non-negative");
    }
    EventRuns runs;
    runs.min_duration_s = min_duration_s;
    runs.source_dt = s.dt();
    runs.source_length = s.size();

    const auto v = s.values();
    // Durations are integer multiples of dt; the slack keeps 0.6 s from counting as > 0.6 s
    // when it is computed as 2 * 0.3.
    const double slack = 1e-9 * s.dt();
    std::size_t start = 0;
    while (start < v.size()) {
        std::size_t end = start + 1;
        while (end < v.size() && v[end] == v[start]) ++end;
        const std::size_t len = end - start;
        const double duration = static_cast<double>(len) * s.dt();
        if (duration - min_duration_s > slack) {
            runs.events.push_back({v[start] ? State::Mobile : State::Immobile, start, len, duration});
        }
        start = end;
    }
    return runs;
}

BehaviorSeries reconstruct(const EventRuns& runs) {
    if (runs.events.empty()) {
        throw Error(ErrorCode::InvalidInput, "cannot reconstruct a series without events");
    }
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < runs.events.size(); ++i) {
        const Event& e = runs.events[i];
        const auto bit = static_cast<std::uint8_t>(e.state);
        if (i > 0 && runs.events[i - 1].state == e.state) {
            if (runs.source_dt > runs.min_duration_s + 1e-9 * runs.source_dt) {
                throw Error(ErrorCode::InvalidInput,
                            "same-state neighbours need a separator shorter than the threshold", i);
            }
            out.push_back(static_cast<std::uint8_t>(1 - bit));
        }
        out.insert(out.end(), e.samples, bit);
    }
    return BehaviorSeries(std::move(out), runs.source_dt);
}

namespace {

void add_log_bins(std::span<const Event> events, State state, double bins_per_decade,
                  std::size_t min_count, DurationHistogram& h) {
    if (!(bins_per_decade > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "bins per decade must be positive");
    }
    // Finest sampling step among the pooled events is the counting unit.
    double unit = 0.0;
    for (const auto& e : events) {
        if (e.state != state || e.samples == 0) continue;
        const double step = e.duration_s / static_cast<double>(e.samples);
        unit = unit == 0.0 ? step : std::min(unit, step);
    }
    std::map<long long, std::size_t> steps;  // duration in units -> count
    for (const auto& e : events) {
        if (e.state != state) continue;
        ++steps[std::llround(e.duration_s / unit)];
    }
    const auto k_min = static_cast<double>(steps.begin()->first);
    const long long k_max = steps.rbegin()->first;

    // Integer bin edges [lo, next_lo) from geometric edges k_min * 10^(j / b).
    std::vector<long long> edges{steps.begin()->first};
    for (int j = 1; edges.back() <= k_max; ++j) {
        const auto e = static_cast<long long>(
            std::ceil(k_min * std::pow(10.0, static_cast<double>(j) / bins_per_decade) - 1e-9));
        if (e > edges.back()) edges.push_back(e);
    }
    auto it = steps.begin();
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const long long lo = edges[b];
        const long long hi = edges[b + 1] - 1;
        std::size_t count = 0;
        while (it != steps.end() && it->first <= hi) {
            count += it->second;
            ++it;
        }
        if (count == 0 && min_count <= 1) continue;
        if (count < min_count) break;
        const double width = static_cast<double>(hi - lo + 1);
        h.bins.push_back({unit * std::sqrt(static_cast<double>(lo) * static_cast<double>(hi)),
                          static_cast<double>(count) / width});
    }
}

}  // namespace

DurationHistogram duration_histogram(std::span<const Event> events, State state,
                                     const HistogramOptions& options) {
    DurationHistogram h;
    h.state = state;
    h.binning = options.binning;
    for (const auto& e : events) {
        if (e.state == state) ++h.events;
    }
    if (h.events == 0) {
        throw Error(ErrorCode::EmptyHistogram, "no " + to_string(state) + " events");
    }

    if (options.binning == Binning::Logarithmic) {
        add_log_bins(events, state, options.bins_per_decade, options.min_count, h);
        return h;
    }

    std::vector<double> durations;
    durations.reserve(h.events);
    for (const auto& e : events) {
        if (e.state == state) durations.push_back(e.duration_s);
    }
    std::sort(durations.begin(), durations.end());
    // Pooled subjects may compute the same duration with different rounding.
    for (double d : durations) {
        if (!h.bins.empty() && std::abs(d - h.bins.back().duration_s) <= 1e-9 * d) {
            h.bins.back().frequency += 1.0;
        } else {
            h.bins.push_back({d, 1.0});
        }
    }
    return h;
}

DurationHistogram duration_histogram(std::span<const EventRuns> subjects, State state,
                                     const HistogramOptions& options) {
    std::vector<Event> pooled;
    for (const auto& r : subjects) pooled.insert(pooled.end(), r.events.begin(), r.events.end());
    DurationHistogram h = duration_histogram(pooled, state, options);
    h.pooled_subjects = subjects.size();
    return h;
}

namespace {

DistributionFit fit_family(const DurationHistogram& h, Family family) {
    if (h.bins.size() < 3) {
        throw Error(ErrorCode::InsufficientBins,
                    "distribution fit needs at least 3 bins, have " + std::to_string(h.bins.size()));
    }
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(h.bins.size());
    y.reserve(h.bins.size());
    for (const auto& b : h.bins) {
        x.push_back(family == Family::PowerLaw ? std::log10(b.duration_s) : b.duration_s);
        y.push_back(std::log10(b.frequency));
    }
    const LineFit line = fit_line(x, y);
    DistributionFit fit;
    fit.family = family;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r2 = line.r2;
    fit.bins = h.bins.size();
    return fit;
}

}  // namespace

DistributionFit fit_power_law(const DurationHistogram& h) { return fit_family(h, Family::PowerLaw); }

DistributionFit fit_exponential(const DurationHistogram& h) {
    return fit_family(h, Family::Exponential);
}

DistributionComparison classify_distribution(const DurationHistogram& h, double r2_margin) {
    DistributionComparison c;
    c.power_law = fit_power_law(h);
    c.exponential = fit_exponential(h);
    const double diff = c.power_law.r2 - c.exponential.r2;
    if (std::abs(diff) < r2_margin) {
        c.verdict = DistributionClass::Inconclusive;
    } else if (diff > 0.0) {
        c.verdict = DistributionClass::PowerLaw;
        c.power_law.winner = true;
    } else {
        c.verdict = DistributionClass::Exponential;
        c.exponential.winner = true;
    }
    return c;
}

GroupSummary summarize(std::span<const double> values) {
    GroupSummary s;
    s.count = values.size();
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        s.se = sd / std::sqrt(static_cast<double>(values.size()));
    }
    return s;
}

}  // namespace lrdfa
