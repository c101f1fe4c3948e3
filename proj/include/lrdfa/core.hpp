#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lrdfa {

struct SubjectInfo {
    std::string id;
    std::string species;
    std::string treatment;

    friend bool operator==(const SubjectInfo&, const SubjectInfo&) = default;
};

/// Uniformly sampled activity record: 1 = mobile, 0 = immobile during the interval.
class BehaviorSeries {
public:
    /// Throws Error(InvalidInput) if values is empty, contains anything but 0/1,
    /// or dt is not a positive finite number.
    BehaviorSeries(std::vector<std::uint8_t> values, double dt, SubjectInfo subject = {});

    /// Accepts reals that are exactly 0.0 or 1.0.
    [[nodiscard]] static BehaviorSeries from_real(std::span<const double> values, double dt,
                                                  SubjectInfo subject = {});

    [[nodiscard]] std::span<const std::uint8_t> values() const noexcept { return values_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] const SubjectInfo& subject() const noexcept { return subject_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double duration_s() const noexcept { return dt_ * static_cast<double>(size()); }

    [[nodiscard]] std::vector<double> as_real() const;

    /// First `length` samples; throws InvalidInput when length is 0 or exceeds size().
    [[nodiscard]] BehaviorSeries prefix(std::size_t length) const;

    friend bool operator==(const BehaviorSeries&, const BehaviorSeries&) = default;

private:
    std::vector<std::uint8_t> values_;
    double dt_;
    SubjectInfo subject_;
};

/// One tracker fix.
struct TrackFix {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/// Binarizes tracker coordinates into one sample per dt interval.
///
/// Intervals start at the first fix: [t0 + i*dt, t0 + (i+1)*dt] for every interval that
/// fits inside the recording. Positions at interval boundaries are linearly interpolated
/// between the bracketing fixes; a sample is 1 iff the boundary-to-boundary displacement
/// exceeds move_epsilon. Consecutive fixes further apart than dt are a gap and raise
/// Error(MissingData) carrying the index of the first uncovered interval.
[[nodiscard]] BehaviorSeries ingest_tracking(std::span<const TrackFix> rows, double dt,
                                             double move_epsilon = 0.0, SubjectInfo subject = {});

/// 100 * (mobile samples) / N.
[[nodiscard]] double percent_time_ambulating(const BehaviorSeries& s);
[[nodiscard]] double percent_time_immobile(const BehaviorSeries& s);

/// Cumulative sum y[t] = x[1] + ... + x[t] (1-based in the usual notation; y[0] here
/// holds the first sample).
struct Profile {
    std::vector<double> y;
    double source_dt = 1.0;

    [[nodiscard]] std::size_t size() const noexcept { return y.size(); }
};

[[nodiscard]] Profile profile(const BehaviorSeries& s);
[[nodiscard]] Profile profile(std::span<const double> values, double dt = 1.0);

/// First differences of the profile; reproduces the source values.
[[nodiscard]] std::vector<double> increments(const Profile& p);

}  // namespace lrdfa
