#include "lrdfa/core.hpp"

#include <algorithm>
#include <cmath>

#include "lrdfa/error.hpp"

namespace lrdfa {

BehaviorSeries::BehaviorSeries(std::vector<std::uint8_t> values, double dt, SubjectInfo subject)
    : values_(std::move(values)), dt_(dt), subject_(std::move(subject)) {
    if (values_.empty()) {
        throw Error(ErrorCode::InvalidInput, "behavior series is empty");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw Error(ErrorCode::InvalidInput, "sampling interval must be positive");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] > 1) {
            throw Error(ErrorCode::InvalidInput, "behavior values must be 0 or 1", i);
        }
    }
}

BehaviorSeries BehaviorSeries::from_real(std::span<const double> values, double dt,
                                         SubjectInfo subject) {
    std::vector<std::uint8_t> bits(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0.0) {
            bits[i] = 0;
        } else if (values[i] == 1.0) {
            bits[i] = 1;
        } else {
            throw Error(ErrorCode::InvalidInput, "behavior values must be 0 or 1", i);
        }
    }
    return BehaviorSeries(std::move(bits), dt, std::move(subject));
}

std::vector<double> BehaviorSeries::as_real() const {
    return std::vector<double>(values_.begin(), values_.end());
}

BehaviorSeries BehaviorSeries::prefix(std::size_t length) const {
    if (length == 0 || length > values_.size()) {
        throw Error(ErrorCode::InvalidInput, "prefix length out of range");
    }
    return BehaviorSeries(std::vector<std::uint8_t>(values_.begin(), values_.begin() + length),
                          dt_, subject_);
}

namespace {

// Relative slack for comparing timestamps against the dt grid.
constexpr double kTimeSlack = 1e-9;

struct Point2 {
    double x;
    double y;
};

Point2 interpolate(std::span<const TrackFix> rows, std::size_t& cursor, double t) {
    while (cursor + 1 < rows.size() && rows[cursor + 1].t <= t) {
        ++cursor;
    }
    const TrackFix& a = rows[cursor];
    if (cursor + 1 == rows.size() || a.t >= t) {
        return {a.x, a.y};
    }
    const TrackFix& b = rows[cursor + 1];
    const double w = (t - a.t) / (b.t - a.t);
    return {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
}

}  // namespace

BehaviorSeries ingest_tracking(std::span<const TrackFix> rows, double dt, double move_epsilon,
                               SubjectInfo subject) {
    if (rows.empty()) {
        throw Error(ErrorCode::InvalidInput, "no tracking rows");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::InvalidInput, "sampling interval must be positive");
    }
    if (!(move_epsilon >= 0.0)) {
        throw Error(ErrorCode::InvalidInput, "move_epsilon must be non-negative");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!std::isfinite(rows[i].t) || !std::isfinite(rows[i].x) || !std::isfinite(rows[i].y)) {
            throw Error(ErrorCode::InvalidInput, "non-finite tracking value", i);
        }
        if (i > 0 && !(rows[i].t > rows[i - 1].t)) {
            throw Error(ErrorCode::InvalidInput, "timestamps are not strictly increasing", i);
        }
    }

    const double t0 = rows.front().t;
    const double span_s = rows.back().t - t0;
    const auto intervals = static_cast<std::size_t>(std::floor(span_s / dt + kTimeSlack));
    if (intervals == 0) {
        throw Error(ErrorCode::InvalidInput, "tracking rows do not span a full interval");
    }

    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].t - rows[i - 1].t > dt * (1.0 + kTimeSlack)) {
            const double offset = (rows[i - 1].t - t0) / dt;
            const auto first = static_cast<std::size_t>(std::floor(offset + kTimeSlack));
            if (first < intervals) {
                throw Error(ErrorCode::MissingData, "tracking gap longer than one interval", first);
            }
        }
    }

    std::vector<std::uint8_t> values(intervals);
    std::size_t cursor = 0;
    Point2 start = interpolate(rows, cursor, t0);
    for (std::size_t i = 0; i < intervals; ++i) {
        const double t_end = t0 + static_cast<double>(i + 1) * dt;
        const Point2 end = interpolate(rows, cursor, t_end);
        const double displacement = std::hypot(end.x - start.x, end.y - start.y);
        values[i] = displacement > move_epsilon ? 1 : 0;
        start = end;
    }
    return BehaviorSeries(std::move(values), dt, std::move(subject));
}

double percent_time_ambulating(const BehaviorSeries& s) {
    const auto mobile = std::count(s.values().begin(), s.values().end(), std::uint8_t{1});
    return 100.0 * static_cast<double>(mobile) / static_cast<double>(s.size());
}

double percent_time_immobile(const BehaviorSeries& s) {
    const auto immobile = std::count(s.values().begin(), s.values().end(), std::uint8_t{0});
    return 100.0 * static_cast<double>(immobile) / static_cast<double>(s.size());
}

Profile profile(const BehaviorSeries& s) {
    Profile p;
    p.source_dt = s.dt();
    p.y.resize(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s.values()[i];
        p.y[i] = acc;
    }
    return p;
}

Profile profile(std::span<const double> values, double dt) {
    if (values.empty()) {
        throw Error(ErrorCode::InvalidInput, "cannot integrate an empty series");
    }
    Profile p;
    p.source_dt = dt;
    p.y.resize(values.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += values[i];
        p.y[i] = acc;
    }
    return p;
}

std::vector<double> increments(const Profile& p) {
    std::vector<double> out(p.y.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < p.y.size(); ++i) {
        out[i] = p.y[i] - prev;
        prev = p.y[i];
    }
    return out;
}

}  // namespace lrdfa
