#include "lrdfa/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "fft.hpp"
#include "lrdfa/error.hpp"
#include "parallel.hpp"

namespace lrdfa {

bool roots_outside_unit_circle(std::span<const double> c) {
    // Schur-Cohn step-down: every reflection coefficient must have modulus below one.
    std::vector<double> a(c.begin(), c.end());
    while (!a.empty() && a.back() == 0.0) a.pop_back();
    while (!a.empty()) {
        const std::size_t k = a.size();
        const double refl = a[k - 1];
        if (!(std::abs(refl) < 1.0)) return false;
        const double denom = 1.0 - refl * refl;
        std::vector<double> next(k - 1);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            next[i] = (a[i] - refl * a[k - 2 - i]) / denom;
        }
        a = std::move(next);
    }
    return true;
}

void validate(const ArfimaParams& params) {
    if (!(std::abs(params.d) < 0.5)) {
        throw Error(ErrorCode::InvalidModel, "fractional parameter must satisfy |d| < 0.5");
    }
    if (!(params.innovation_sd > 0.0) || !std::isfinite(params.innovation_sd)) {
        throw Error(ErrorCode::InvalidModel, "innovation sd must be positive");
    }
    std::vector<double> ar_poly(params.ar.size());
    std::transform(params.ar.begin(), params.ar.end(), ar_poly.begin(), [](double v) { return -v; });
    if (!roots_outside_unit_circle(ar_poly)) {
        throw Error(ErrorCode::InvalidModel, "AR polynomial is not stationary");
    }
    if (!roots_outside_unit_circle(params.ma)) {
        throw Error(ErrorCode::InvalidModel, "MA polynomial is not invertible");
    }
}

std::vector<double> fractional_weights(double d, std::size_t lags) {
    std::vector<double> w(lags + 1);
    w[0] = 1.0;
    for (std::size_t k = 1; k <= lags; ++k) {
        const auto kd = static_cast<double>(k);
        w[k] = w[k - 1] * (kd - 1.0 + d) / kd;
    }
    return w;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // splitmix64 finalizer over a golden-ratio stride.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> gen_arfima(const ArfimaParams& params, std::size_t length, std::uint64_t seed,
                               const GeneratorOptions& options) {
    validate(params);
    if (length == 0) {
        throw Error(ErrorCode::InvalidInput, "surrogate length must be positive");
    }
    const std::size_t burn = 2 * std::max(params.p(), params.q()) + 1000;
    const std::size_t total = length + burn;
    const bool fractional = params.d != 0.0;
    const std::size_t lags =
        fractional ? (options.truncation == 0 ? std::max<std::size_t>(5000, length) : options.truncation)
                   : 0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, params.innovation_sd);
    std::vector<double> innovations(total + lags);
    for (double& e : innovations) e = normal(rng);

    std::vector<double> u;
    if (fractional) {
        const auto weights = fractional_weights(params.d, lags);
        const auto full = detail::convolve(innovations, weights);
        u.assign(full.begin() + static_cast<std::ptrdiff_t>(lags),
                 full.begin() + static_cast<std::ptrdiff_t>(lags + total));
    } else {
        u = std::move(innovations);
    }

    std::vector<double> x(total);
    for (std::size_t t = 0; t < total; ++t) {
        double v = u[t];
        for (std::size_t j = 0; j < params.q() && j < t; ++j) v += params.ma[j] * u[t - 1 - j];
        for (std::size_t i = 0; i < params.p() && i < t; ++i) v += params.ar[i] * x[t - 1 - i];
        x[t] = v;
    }
    return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(burn), x.end());
}

std::vector<double> add_trend(std::span<const double> series, const TrendSpec& spec) {
    if (!std::isfinite(spec.amplitude)) {
        throw Error(ErrorCode::InvalidInput, "trend amplitude must be finite");
    }
    const auto n = static_cast<double>(series.size());
    std::vector<double> out(series.begin(), series.end());
    switch (spec.kind) {
        case TrendSpec::Kind::Polynomial:
            if (!(spec.power >= 0.0)) {
                throw Error(ErrorCode::InvalidInput, "trend power must be non-negative");
            }
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] += spec.amplitude * std::pow(static_cast<double>(i + 1) / n, spec.power);
            }
            break;
        case TrendSpec::Kind::Sinusoidal:
            if (!(spec.period >= 2.0)) {
                throw Error(ErrorCode::InvalidInput, "trend period must be at least 2 samples");
            }
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] += spec.amplitude *
                          std::sin(2.0 * std::numbers::pi * static_cast<double>(i + 1) / spec.period);
            }
            break;
    }
    return out;
}

std::vector<std::uint8_t> binarize_at_median(std::span<const double> series) {
    if (series.empty()) return {};
    std::vector<double> sorted(series.begin(), series.end());
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    double median = sorted[mid];
    if (sorted.size() % 2 == 0) {
        const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (median + lower);
    }
    std::vector<std::uint8_t> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = series[i] > median ? 1 : 0;
    return out;
}

namespace {

double quantile(const std::vector<double>& sorted, double prob) {
    const double pos = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

}  // namespace

EmpiricalCi empirical_ci(const ArfimaParams& model, std::size_t length, int order,
                         std::size_t replicates, std::uint64_t seed, const ScaleConfig& scales,
                         unsigned workers) {
    if (replicates < 2) {
        throw Error(ErrorCode::InsufficientReplicates, "empirical interval needs at least two replicates");
    }
    validate(model);
    // Fail fast on infeasible grids before spending any replicate.
    (void)default_scales(length, order, scales);

    EmpiricalCi ci;
    ci.replicates = replicates;
    ci.alphas.resize(replicates);
    detail::parallel_for(replicates, workers, [&](std::size_t i) {
        const auto series = gen_arfima(model, length, derive_seed(seed, i));
        ci.alphas[i] = run_dfa(series, order, scales).fit.alpha;
    });

    const double n = static_cast<double>(replicates);
    ci.mean = std::accumulate(ci.alphas.begin(), ci.alphas.end(), 0.0) / n;
    double ss = 0.0;
    for (double a : ci.alphas) ss += (a - ci.mean) * (a - ci.mean);
    ci.sd = std::sqrt(ss / (n - 1.0));

    std::vector<double> sorted = ci.alphas;
    std::sort(sorted.begin(), sorted.end());
    ci.q025 = quantile(sorted, 0.025);
    ci.q975 = quantile(sorted, 0.975);
    return ci;
}

}  // namespace lrdfa
