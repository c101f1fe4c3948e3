#include "lrdfa/dfa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrdfa/error.hpp"
#include "lrdfa/regression.hpp"

namespace lrdfa {

std::vector<std::size_t> default_scales(std::size_t length, int order, const ScaleConfig& config) {
    if (order < 1) {
        throw Error(ErrorCode::InvalidInput, "detrending order must be at least 1");
    }
    if (!(config.cap_fraction > 0.0 && config.cap_fraction <= 1.0)) {
        throw Error(ErrorCode::InvalidInput, "scale cap fraction must lie in (0, 1]");
    }
    if (!(config.points_per_decade > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "scale grid density must be positive");
    }
    const auto m = static_cast<std::size_t>(order);
    const std::size_t n_min = config.min_scale == 0 ? std::max<std::size_t>(2 * m + 2, 8)
                                                    : std::max(config.min_scale, m + 2);
    const auto n_max = static_cast<std::size_t>(
        std::floor(static_cast<double>(length) * config.cap_fraction + 1e-9));
    if (n_max < n_min) {
        throw Error(ErrorCode::InsufficientLength,
                    "series of length " + std::to_string(length) + " too short for order " +
                        std::to_string(order));
    }

    std::vector<std::size_t> scales{n_min};
    if (n_max == n_min) return scales;

    const double decades = std::log10(static_cast<double>(n_max) / static_cast<double>(n_min));
    const auto steps = static_cast<std::size_t>(std::ceil(decades * config.points_per_decade));
    for (std::size_t i = 1; i <= steps; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(steps);
        const double v = static_cast<double>(n_min) * std::pow(10.0, frac * decades);
        const auto n = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(v)), n_min, n_max);
        if (n > scales.back()) scales.push_back(n);
    }
    if (scales.back() != n_max) scales.push_back(n_max);
    return scales;
}

namespace {

// Orthonormal basis (column-major, `cols` columns of length n) of polynomials of degree
// <= order sampled at n equally spaced points. Gram-Schmidt is applied twice.
std::vector<double> polynomial_basis(std::size_t n, int order) {
    const auto cols = static_cast<std::size_t>(order) + 1;
    std::vector<double> q(n * cols);
    const double half = static_cast<double>(n - 1) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) - half) / half;
        double v = 1.0;
        for (std::size_t k = 0; k < cols; ++k) {
            q[k * n + i] = v;
            v *= x;
        }
    }
    for (std::size_t k = 0; k < cols; ++k) {
        double* col = &q[k * n];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                const double* prev = &q[j * n];
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += prev[i] * col[i];
                for (std::size_t i = 0; i < n; ++i) col[i] -= dot * prev[i];
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) col[i] /= norm;
    }
    return q;
}

// Squared residual of one block after projecting out the basis.
double block_residual(std::span<const double> y, const std::vector<double>& basis,
                      std::size_t cols, std::vector<double>& work) {
    const std::size_t n = y.size();
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);

    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        work[i] = y[i] - mean;
        spread += work[i] * work[i];
    }
    if (spread == 0.0) return 0.0;

    for (std::size_t k = 0; k < cols; ++k) {
        const double* q = &basis[k * n];
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q[i] * work[i];
        for (std::size_t i = 0; i < n; ++i) work[i] -= dot * q[i];
    }
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) ssr += work[i] * work[i];
    // Rounding-level leftovers of an exactly polynomial block.
    return ssr <= 1e-20 * spread ? 0.0 : ssr;
}

}  // namespace

FluctuationCurve fluctuation_function(const Profile& p, int order,
                                      std::span<const std::size_t> scales,
                                      BlockCoverage coverage) {
    if (order < 1) {
        throw Error(ErrorCode::InvalidInput, "detrending order must be at least 1");
    }
    const std::size_t N = p.size();
    const auto cols = static_cast<std::size_t>(order) + 1;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const std::size_t n = scales[i];
        if (n <= static_cast<std::size_t>(order)) {
            throw Error(ErrorCode::InvalidScale,
                        "block size " + std::to_string(n) + " cannot support order " +
                            std::to_string(order),
                        i);
        }
        if (n > N) {
            throw Error(ErrorCode::InvalidScale,
                        "block size " + std::to_string(n) + " exceeds series length", i);
        }
        if (i > 0 && n <= scales[i - 1]) {
            throw Error(ErrorCode::InvalidInput, "scales must be strictly increasing", i);
        }
    }

    FluctuationCurve curve;
    curve.order = order;
    curve.length = N;
    curve.points.reserve(scales.size());

    const std::span<const double> y(p.y);
    std::vector<double> work;
    for (std::size_t n : scales) {
        const std::vector<double> basis = polynomial_basis(n, order);
        work.resize(n);
        const std::size_t blocks = N / n;

        double total = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            total += block_residual(y.subspan(b * n, n), basis, cols, work);
        }
        std::size_t used = blocks * n;
        if (coverage == BlockCoverage::BothEnds) {
            const std::size_t tail = N - blocks * n;
            for (std::size_t b = 0; b < blocks; ++b) {
                total += block_residual(y.subspan(tail + b * n, n), basis, cols, work);
            }
            used *= 2;
        }
        curve.points.push_back({n, std::sqrt(total / static_cast<double>(used))});
    }
    return curve;
}

ScalingFit fit_scaling(const FluctuationCurve& c, std::optional<ScaleRange> range) {
    std::vector<double> lx;
    std::vector<double> ly;
    std::size_t in_range = 0;
    std::size_t zeros = 0;
    double n_lo = 0.0;
    double n_hi = 0.0;
    for (const auto& pt : c.points) {
        const auto n = static_cast<double>(pt.n);
        if (range && (n < range->n_min || n > range->n_max)) continue;
        ++in_range;
        if (pt.F <= 0.0) {
            ++zeros;
            continue;
        }
        if (lx.empty()) n_lo = n;
        n_hi = n;
        lx.push_back(std::log10(n));
        ly.push_back(std::log10(pt.F));
    }
    if (in_range > 0 && zeros == in_range) {
        throw Error(ErrorCode::DegenerateCurve, "every fluctuation value is zero");
    }
    if (lx.size() < 3) {
        throw Error(ErrorCode::InsufficientPoints,
                    "scaling fit needs three points with F > 0, have " + std::to_string(lx.size()));
    }

    const LineFit line = fit_line(lx, ly);
    ScalingFit fit;
    fit.alpha = line.slope;
    fit.log_phi = line.intercept;
    fit.se_alpha = line.se_slope;
    fit.ci_lower = fit.alpha - kCiMultiplier * fit.se_alpha;
    fit.ci_upper = fit.alpha + kCiMultiplier * fit.se_alpha;
    fit.r2 = line.r2;
    fit.range = {n_lo, n_hi};
    fit.n_points = lx.size();
    fit.zero_points = zeros;
    fit.degenerate_activity = static_cast<double>(zeros) > 0.2 * static_cast<double>(in_range);
    return fit;
}

LongMemoryTest test_long_memory(const ScalingFit& fit) {
    LongMemoryTest t;
    t.d_hat = fit.alpha - 0.5;
    if (fit.se_alpha == 0.0) {
        if (t.d_hat == 0.0) {
            throw Error(ErrorCode::NoVariance, "zero standard error and zero effect");
        }
        t.z = std::copysign(std::numeric_limits<double>::infinity(), t.d_hat);
        t.p_value = 0.0;
        t.reject_at_5pct = true;
        return t;
    }
    t.z = t.d_hat / fit.se_alpha;
    t.p_value = std::erfc(std::abs(t.z) / std::sqrt(2.0));
    t.reject_at_5pct = std::abs(t.z) > kZ975;
    return t;
}

namespace {

struct LogLog {
    std::vector<double> x;
    std::vector<double> y;
};

LogLog usable_points(const FluctuationCurve& c) {
    LogLog out;
    for (const auto& pt : c.points) {
        if (pt.F <= 0.0) continue;
        out.x.push_back(std::log10(static_cast<double>(pt.n)));
        out.y.push_back(std::log10(pt.F));
    }
    return out;
}

}  // namespace

LocalSlopeCurve local_slopes(const FluctuationCurve& c, std::size_t window) {
    const LogLog pts = usable_points(c);
    if (window < 3) {
        throw Error(ErrorCode::InsufficientPoints, "local slope window must be at least 3");
    }
    if (window > pts.x.size()) {
        throw Error(ErrorCode::InsufficientPoints,
                    "window " + std::to_string(window) + " exceeds " +
                        std::to_string(pts.x.size()) + " usable points");
    }
    LocalSlopeCurve out;
    out.window = window;
    const std::span<const double> xs(pts.x);
    const std::span<const double> ys(pts.y);
    for (std::size_t i = 0; i + window <= xs.size(); ++i) {
        const auto wx = xs.subspan(i, window);
        const LineFit line = fit_line(wx, ys.subspan(i, window));
        double center = 0.0;
        for (double v : wx) center += v;
        center /= static_cast<double>(window);
        out.points.push_back({center, line.slope, line.r2});
    }
    return out;
}

DfaResult run_dfa(std::span<const double> values, int order, const ScaleConfig& scales,
                  BlockCoverage coverage) {
    const Profile p = profile(values);
    const auto grid = default_scales(p.size(), order, scales);
    DfaResult out;
    out.curve = fluctuation_function(p, order, grid, coverage);
    out.fit = fit_scaling(out.curve);
    return out;
}

std::vector<DurationSweepEntry> duration_sweep(std::span<const double> values, double dt,
                                               std::span<const double> durations_s, int order,
                                               const ScaleConfig& scales) {
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "sampling interval must be positive");
    }
    std::vector<DurationSweepEntry> table;
    table.reserve(durations_s.size());
    for (double duration : durations_s) {
        DurationSweepEntry entry;
        entry.duration_s = duration;
        const double samples = duration / dt;
        if (!(samples >= 1.0) || !std::isfinite(samples)) {
            entry.warning = "duration shorter than one sample";
            table.push_back(std::move(entry));
            continue;
        }
        entry.length = static_cast<std::size_t>(std::floor(samples + 1e-9));
        if (entry.length > values.size()) {
            entry.warning = "duration exceeds recording";
            table.push_back(std::move(entry));
            continue;
        }
        try {
            entry.fit = run_dfa(values.first(entry.length), order, scales).fit;
        } catch (const Error& e) {
            entry.warning = e.what();
        }
        table.push_back(std::move(entry));
    }
    return table;
}

}  // namespace lrdfa
