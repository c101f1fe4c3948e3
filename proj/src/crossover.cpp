#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lrdfa/dfa.hpp"
#include "lrdfa/error.hpp"
#include "lrdfa/regression.hpp"

namespace lrdfa {

namespace {

constexpr std::size_t kMinCrossoverPoints = 8;

struct Hinge {
    double sse = std::numeric_limits<double>::infinity();
    double level = 0.0;  // fitted value at the breakpoint
    double slope_left = 0.0;
    double slope_right = 0.0;
    double breakpoint = 0.0;
};

// Least squares for y = level + slope_left * min(x - c, 0) + slope_right * max(x - c, 0).
Hinge fit_hinge(std::span<const double> x, std::span<const double> y, double c) {
    std::array<std::array<double, 3>, 3> a{};
    std::array<double, 3> b{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = x[i] - c;
        const std::array<double, 3> row{1.0, std::min(u, 0.0), std::max(u, 0.0)};
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) a[r][s] += row[r] * row[s];
            b[r] += row[r] * y[i];
        }
    }
    // Gaussian elimination with partial pivoting.
    std::array<int, 3> perm{0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(a[perm[r]][col]) > std::abs(a[perm[pivot]][col])) pivot = r;
        }
        std::swap(perm[col], perm[pivot]);
        const double d = a[perm[col]][col];
        if (d == 0.0) return {};
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[perm[r]][col] / d;
            for (int s = col; s < 3; ++s) a[perm[r]][s] -= f * a[perm[col]][s];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    std::array<double, 3> coef{};
    for (int col = 2; col >= 0; --col) {
        double acc = b[perm[col]];
        for (int s = col + 1; s < 3; ++s) acc -= a[perm[col]][s] * coef[s];
        coef[col] = acc / a[perm[col]][col];
    }

    Hinge h;
    h.level = coef[0];
    h.slope_left = coef[1];
    h.slope_right = coef[2];
    h.breakpoint = c;
    h.sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = x[i] - c;
        const double r = y[i] - (coef[0] + coef[1] * std::min(u, 0.0) + coef[2] * std::max(u, 0.0));
        h.sse += r * r;
    }
    return h;
}

double segment_r2(std::span<const double> x, std::span<const double> y, const Hinge& h,
                  bool left) {
    double mean = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (left ? x[i] <= h.breakpoint : x[i] >= h.breakpoint) {
            mean += y[i];
            ++count;
        }
    }
    if (count == 0) return 0.0;
    mean /= static_cast<double>(count);
    double sst = 0.0;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(left ? x[i] <= h.breakpoint : x[i] >= h.breakpoint)) continue;
        const double u = x[i] - h.breakpoint;
        const double fitted = h.level + h.slope_left * std::min(u, 0.0) + h.slope_right * std::max(u, 0.0);
        sse += (y[i] - fitted) * (y[i] - fitted);
        sst += (y[i] - mean) * (y[i] - mean);
    }
    return sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 1.0;
}

double bic(double sse, std::size_t k, std::size_t params) {
    // Floor keeps exact fits finite; 1e-20 per point is far below log10 rounding noise.
    const double floor = 1e-20 * static_cast<double>(k);
    const auto kd = static_cast<double>(k);
    return kd * std::log(std::max(sse, floor) / kd) + static_cast<double>(params) * std::log(kd);
}

}  // namespace

CrossoverReport detect_crossover(const FluctuationCurve& c, const CrossoverOptions& options) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& pt : c.points) {
        if (pt.F <= 0.0) continue;
        x.push_back(std::log10(static_cast<double>(pt.n)));
        y.push_back(std::log10(pt.F));
    }
    const std::size_t k = x.size();
    const std::size_t seg = std::max<std::size_t>(options.min_segment_points, 2);
    if (k < kMinCrossoverPoints || k < 2 * seg) {
        throw Error(ErrorCode::InsufficientPoints,
                    "crossover search needs at least 8 usable points, have " + std::to_string(k));
    }

    const LineFit line = fit_line(x, y);

    // Candidate breakpoints span [x[seg-1], x[k-seg]] so each side keeps `seg` points
    // (the point at the breakpoint counts for both).
    const double lo = x.front() + options.min_segment_decades;
    const double hi = x.back() - options.min_segment_decades;
    auto admissible = [&](double cpos) { return cpos >= lo - 1e-12 && cpos <= hi + 1e-12; };

    Hinge best;
    const int subdivisions = std::max(options.subdivisions, 1);
    for (std::size_t i = seg - 1; i < k - seg; ++i) {
        for (int s = 0; s < subdivisions; ++s) {
            const double cpos = x[i] + (x[i + 1] - x[i]) * static_cast<double>(s) / subdivisions;
            if (!admissible(cpos)) continue;
            const Hinge h = fit_hinge(x, y, cpos);
            if (h.sse < best.sse) best = h;
        }
    }
    if (admissible(x[k - seg])) {
        const Hinge h = fit_hinge(x, y, x[k - seg]);
        if (h.sse < best.sse) best = h;
    }

    CrossoverReport report;
    report.n_points = k;
    if (!std::isfinite(best.sse)) {
        // Range too narrow for two segments of the requested span: a single line by fiat.
        report.break_log10_n = 0.5 * (x.front() + x.back());
        report.alpha1 = report.alpha2 = line.slope;
        report.r2_1 = report.r2_2 = line.r2;
        return report;
    }

    report.break_log10_n = best.breakpoint;
    report.alpha1 = best.slope_left;
    report.alpha2 = best.slope_right;
    report.r2_1 = segment_r2(x, y, best, true);
    report.r2_2 = segment_r2(x, y, best, false);
    report.delta_bic = bic(line.sse, k, 2) - bic(best.sse, k, 4);
    report.has_crossover = report.delta_bic > options.bic_threshold &&
                           std::abs(report.alpha2 - report.alpha1) >= options.min_slope_change;
    return report;
}

std::string to_string(SweepClass c) {
    switch (c) {
        case SweepClass::NoCrossover: return "no_crossover";
        case SweepClass::Artificial: return "artificial";
        case SweepClass::Persistent: return "persistent";
        case SweepClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

SweepClass classify_sweep(std::span<const SweepOrderResult> results) {
    bool any = false;
    bool all = !results.empty();
    bool vanished = false;
    bool seen = false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
        if (r.crossover.has_crossover) {
            any = true;
            seen = true;
            lo = std::min(lo, r.crossover.break_log10_n);
            hi = std::max(hi, r.crossover.break_log10_n);
        } else {
            all = false;
            if (seen) vanished = true;
        }
    }
    if (!any) return SweepClass::NoCrossover;
    if (vanished) return SweepClass::Artificial;
    if (all && hi - lo <= kPersistentSpread) return SweepClass::Persistent;
    return SweepClass::Inconclusive;
}

DetrendingSweep detrending_sweep(std::span<const double> values, std::span<const int> orders,
                                 const ScaleConfig& scales, const CrossoverOptions& crossover) {
    if (orders.empty()) {
        throw Error(ErrorCode::InvalidInput, "detrending sweep needs at least one order");
    }
    std::vector<int> sorted(orders.begin(), orders.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    const Profile p = profile(values);
    DetrendingSweep sweep;
    for (int m : sorted) {
        SweepOrderResult r;
        r.order = m;
        const auto grid = default_scales(p.size(), m, scales);
        r.curve = fluctuation_function(p, m, grid);
        r.crossover = detect_crossover(r.curve, crossover);
        sweep.orders.push_back(std::move(r));
    }
    sweep.classification = classify_sweep(sweep.orders);
    sweep.recommended_order = recommend_order(sweep.orders);
    return sweep;
}

std::optional<int> recommend_order(std::span<const SweepOrderResult> results) {
    std::optional<int> order;
    for (auto it = results.rbegin(); it != results.rend(); ++it) {
        if (it->crossover.has_crossover) break;
        order = it->order;
    }
    return order;
}

}  // namespace lrdfa
