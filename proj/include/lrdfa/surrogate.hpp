#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrdfa/dfa.hpp"

namespace lrdfa {

/// ARFIMA(p, d, q): phi(B) (1 - B)^d x_t = theta(B) e_t with
/// phi(B) = 1 - ar[0] B - ... and theta(B) = 1 + ma[0] B + ...
struct ArfimaParams {
    double d = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
    double innovation_sd = 1.0;

    [[nodiscard]] std::size_t p() const noexcept { return ar.size(); }
    [[nodiscard]] std::size_t q() const noexcept { return ma.size(); }
};

/// Throws InvalidModel unless |d| < 0.5, innovation_sd > 0, the AR polynomial is
/// stationary and the MA polynomial invertible (all roots outside the unit circle).
void validate(const ArfimaParams& params);

/// True when every root of 1 + c[0] z + ... + c[k-1] z^k lies outside the unit circle.
[[nodiscard]] bool roots_outside_unit_circle(std::span<const double> c);

/// MA(inf) weights of (1 - B)^-d: w[0] = 1, w[k] = w[k-1] (k - 1 + d) / k.
[[nodiscard]] std::vector<double> fractional_weights(double d, std::size_t lags);

struct GeneratorOptions {
    /// Lags kept in the fractional filter; 0 selects max(5000, N).
    std::size_t truncation = 0;
};

/// Gaussian innovations -> truncated fractional integration -> ARMA recursion.
/// 2 * max(p, q) + 1000 leading samples are discarded. Deterministic per seed.
[[nodiscard]] std::vector<double> gen_arfima(const ArfimaParams& params, std::size_t length,
                                             std::uint64_t seed,
                                             const GeneratorOptions& options = {});

/// Independent per-replicate seed derived from (seed, index).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct TrendSpec {
    enum class Kind { Polynomial, Sinusoidal };
    Kind kind = Kind::Polynomial;
    double amplitude = 0.0;
    /// Polynomial exponent (>= 0).
    double power = 1.0;
    /// Sinusoid period in samples (>= 2).
    double period = 2.0;
};

/// Adds A (t/N)^p or A sin(2 pi t / T) for t = 1..N. Throws InvalidInput for an invalid spec.
[[nodiscard]] std::vector<double> add_trend(std::span<const double> series, const TrendSpec& spec);

/// 1 where the value exceeds the sample median, else 0.
[[nodiscard]] std::vector<std::uint8_t> binarize_at_median(std::span<const double> series);

struct EmpiricalCi {
    double mean = 0.0;
    double sd = 0.0;
    double q025 = 0.0;
    double q975 = 0.0;
    std::size_t replicates = 0;
    /// Per-replicate estimates in replicate order.
    std::vector<double> alphas;

    [[nodiscard]] bool contains(double alpha) const noexcept { return alpha >= q025 && alpha <= q975; }
};

/// Distribution of the DFA alpha estimate over independent surrogates of `model`.
/// Quantiles use linear interpolation between order statistics. Throws
/// InsufficientReplicates for fewer than two replicates.
[[nodiscard]] EmpiricalCi empirical_ci(const ArfimaParams& model, std::size_t length, int order,
                                       std::size_t replicates, std::uint64_t seed,
                                       const ScaleConfig& scales = {}, unsigned workers = 1);

}  // namespace lrdfa
