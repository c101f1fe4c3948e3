#include "lrdfa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft.hpp"
#include "lrdfa/error.hpp"

namespace lrdfa {

PowerSpectrum periodogram(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 16) {
        throw Error(ErrorCode::InsufficientLength,
                    "periodogram needs at least 16 samples, have " + std::to_string(n));
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centered(values.begin(), values.end());
    for (double& v : centered) v -= mean;

    const auto dft = detail::real_dft(centered);
    const auto nd = static_cast<double>(n);
    PowerSpectrum ps;
    ps.length = n;
    const std::size_t half = n / 2;
    ps.freqs.reserve(half);
    ps.power.reserve(half);
    for (std::size_t k = 1; k <= half; ++k) {
        const double p = std::norm(dft[k]) / nd;
        const bool nyquist = (n % 2 == 0) && k == half;
        ps.freqs.push_back(static_cast<double>(k) / nd);
        ps.power.push_back(nyquist ? p : 2.0 * p);
    }
    return ps;
}

PowerSpectrum periodogram(const BehaviorSeries& s) {
    const auto real = s.as_real();
    return periodogram(real);
}

PeriodicityVerdict detect_periodicity(const PowerSpectrum& ps, double ratio_threshold) {
    PeriodicityVerdict v;
    if (ps.power.empty()) return v;
    const auto peak = std::max_element(ps.power.begin(), ps.power.end());
    const auto idx = static_cast<std::size_t>(peak - ps.power.begin());
    v.frequency = ps.freqs[idx];
    v.period_samples = 1.0 / v.frequency;

    std::vector<double> sorted = ps.power;
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    double median = sorted[mid];
    if (sorted.size() % 2 == 0) {
        const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (median + lower);
    }
    if (median > 0.0) {
        v.ratio = *peak / median;
    } else {
        v.ratio = *peak > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    v.periodic = v.ratio > ratio_threshold;
    return v;
}

}  // namespace lrdfa
