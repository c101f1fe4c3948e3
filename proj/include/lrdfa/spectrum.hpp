#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lrdfa/core.hpp"

namespace lrdfa {

/// One-sided periodogram at the Fourier frequencies k/N, k = 1..floor(N/2).
struct PowerSpectrum {
    std::vector<double> freqs;  // cycles per sample
    std::vector<double> power;
    std::size_t length = 0;
};

/// Mean-removed raw periodogram, scaled so that the powers sum to N times the population
/// variance: 2|X_k|^2 / N per bin, with the Nyquist bin (even N) counted once.
/// Throws InsufficientLength below 16 samples.
[[nodiscard]] PowerSpectrum periodogram(std::span<const double> values);
[[nodiscard]] PowerSpectrum periodogram(const BehaviorSeries& s);

struct PeriodicityVerdict {
    bool periodic = false;
    /// Frequency of the strongest bin (cycles per sample) and its period in samples.
    double frequency = 0.0;
    double period_samples = 0.0;
    /// Peak power over median power; infinite when the median is zero and the peak is not.
    double ratio = 0.0;
};

inline constexpr double kDefaultPeriodicityRatio = 10.0;

/// Flags the spectrum as periodic when its largest bin exceeds ratio_threshold times the
/// median bin. The peak frequency is reported either way.
[[nodiscard]] PeriodicityVerdict detect_periodicity(const PowerSpectrum& ps,
                                                    double ratio_threshold = kDefaultPeriodicityRatio);

}  // namespace lrdfa
