#include "lrdfa/regression.hpp"

#include <algorithm>
#include <cmath>

#include "lrdfa/error.hpp"

namespace lrdfa {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::InvalidInput, "regression inputs differ in length");
    }
    const std::size_t k = x.size();
    if (k < 2) {
        throw Error(ErrorCode::InsufficientPoints, "regression needs at least two points");
    }

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) {
        throw Error(ErrorCode::InsufficientPoints, "regression abscissae are all equal");
    }

    LineFit fit;
    fit.count = k;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double sse = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    fit.sse = sse;
    fit.se_slope = k > 2 ? std::sqrt((sse / static_cast<double>(k - 2)) / sxx) : 0.0;
    // Rounding can leave sse a hair above syy on near-flat data.
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace lrdfa
