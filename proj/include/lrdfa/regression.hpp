#pragma once

#include <cstddef>
#include <span>

namespace lrdfa {

/// Ordinary least squares fit of y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// sqrt((SSE / (k - 2)) / Sxx); zero for k == 2.
    double se_slope = 0.0;
    double r2 = 0.0;
    double sse = 0.0;
    std::size_t count = 0;
};

/// Requires at least two points and a non-constant x. Throws Error(InsufficientPoints)
/// otherwise. r2 is 1 when y is constant and fitted exactly.
[[nodiscard]] LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace lrdfa
