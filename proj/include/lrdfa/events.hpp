#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lrdfa/core.hpp"

namespace lrdfa {

enum class State : std::uint8_t { Immobile = 0, Mobile = 1 };

[[nodiscard]] std::string to_string(State s);

struct Event {
    State state = State::Immobile;
    /// Index of the first sample of the run in the source series.
    std::size_t start = 0;
    std::size_t samples = 0;
    double duration_s = 0.0;
};

struct EventRuns {
    std::vector<Event> events;
    double min_duration_s = 0.0;
    double source_dt = 1.0;
    std::size_t source_length = 0;
};

/// Maximal constant-state runs longer than min_duration_s. Shorter runs (including those
/// exactly at the threshold) are dropped, not merged into their neighbours.
[[nodiscard]] EventRuns extract_events(const BehaviorSeries& s, double min_duration_s = 0.6);

/// Series whose events are exactly `runs`: events are laid end to end, and a single
/// sample of the opposite state separates two consecutive events of the same state.
/// Requires source_dt <= min_duration_s whenever such a separator is needed.
[[nodiscard]] BehaviorSeries reconstruct(const EventRuns& runs);

enum class Binning { Exact, Logarithmic };

struct HistogramOptions {
    Binning binning = Binning::Exact;
    /// Logarithmic binning only: bins per decade of duration.
    double bins_per_decade = 10.0;
    /// Logarithmic binning only: the table ends before the first bin holding fewer events,
    /// so the sparse tail (where log counts are biased upwards) is left out.
    std::size_t min_count = 5;
};

struct HistogramBin {
    double duration_s = 0.0;
    /// Raw count for exact bins; count per sampling step of bin width for log bins.
    double frequency = 0.0;
};

struct DurationHistogram {
    State state = State::Immobile;
    Binning binning = Binning::Exact;
    std::vector<HistogramBin> bins;
    std::size_t pooled_subjects = 1;
    std::size_t events = 0;
};

/// Frequency table of the durations of `state` events. Exact binning counts each distinct
/// duration; logarithmic binning groups durations (in units of the smallest duration seen)
/// into geometric bins and divides counts by the number of sampling steps each bin spans.
/// Throws EmptyHistogram when there is no event of that state.
[[nodiscard]] DurationHistogram duration_histogram(std::span<const Event> events, State state,
                                                   const HistogramOptions& options = {});

/// Pools subjects by concatenating their event lists.
[[nodiscard]] DurationHistogram duration_histogram(std::span<const EventRuns> subjects, State state,
                                                   const HistogramOptions& options = {});

enum class Family { PowerLaw, Exponential };

[[nodiscard]] std::string to_string(Family f);

struct DistributionFit {
    Family family = Family::PowerLaw;
    /// S for the power law (log-log), rate per second for the exponential (semi-log).
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t bins = 0;
    bool winner = false;
};

/// OLS of log10 frequency on log10 duration. Throws InsufficientBins below three bins.
[[nodiscard]] DistributionFit fit_power_law(const DurationHistogram& h);

/// OLS of log10 frequency on duration in seconds. Throws InsufficientBins below three bins.
[[nodiscard]] DistributionFit fit_exponential(const DurationHistogram& h);

enum class DistributionClass { PowerLaw, Exponential, Inconclusive };

[[nodiscard]] std::string to_string(DistributionClass c);

struct DistributionComparison {
    DistributionFit power_law;
    DistributionFit exponential;
    DistributionClass verdict = DistributionClass::Inconclusive;
};

inline constexpr double kDefaultR2Margin = 0.01;

/// Fits both families and picks the one with the higher r2, or Inconclusive when the r2
/// values differ by less than r2_margin.
[[nodiscard]] DistributionComparison classify_distribution(const DurationHistogram& h,
                                                           double r2_margin = kDefaultR2Margin);

/// Mean and standard error of per-subject values (se = sd / sqrt(count), 0 for one value).
struct GroupSummary {
    double mean = 0.0;
    double se = 0.0;
    std::size_t count = 0;
};

[[nodiscard]] GroupSummary summarize(std::span<const double> values);

}  // namespace lrdfa
