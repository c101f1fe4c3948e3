#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrdfa/core.hpp"

namespace lrdfa {

/// Block-size grid settings.
struct ScaleConfig {
    /// Largest block as a fraction of the series length (1/4 classic, 1/10 conservative).
    double cap_fraction = 0.25;
    /// Geometric grid density; duplicate integers are dropped after rounding.
    double points_per_decade = 15.0;
    /// Smallest block. 0 selects max(2m + 2, 8).
    std::size_t min_scale = 0;
};

/// Which blocks contribute to F(n).
enum class BlockCoverage {
    /// floor(N/n) blocks from the start; the remainder is discarded.
    FromStart,
    /// Additionally floor(N/n) blocks aligned to the end, averaged with the first set.
    BothEnds,
};

/// Integer block sizes, strictly increasing, geometrically spaced over
/// [min_scale, floor(N * cap_fraction)]. Throws InsufficientLength when that range is empty
/// and InvalidInput for order < 1 or a cap outside (0, 1].
[[nodiscard]] std::vector<std::size_t> default_scales(std::size_t length, int order,
                                                      const ScaleConfig& config = {});

struct FluctuationPoint {
    std::size_t n = 0;
    double F = 0.0;
};

struct FluctuationCurve {
    int order = 1;
    std::size_t length = 0;
    std::vector<FluctuationPoint> points;
};

/// Root-mean-square residual of the profile around blockwise degree-`order` least-squares
/// polynomials, one point per requested scale.
///
/// Residuals that vanish to rounding level (relative 1e-10 of the block's own spread) are
/// reported as exactly zero so exact polynomial profiles produce F = 0.
/// Throws InvalidScale for n <= order or n > N, and InvalidInput for unsorted scales.
[[nodiscard]] FluctuationCurve fluctuation_function(const Profile& p, int order,
                                                    std::span<const std::size_t> scales,
                                                    BlockCoverage coverage = BlockCoverage::FromStart);

struct ScaleRange {
    double n_min = 0.0;
    double n_max = 0.0;
};

/// Power-law fit log10 F = log_phi + alpha * log10 n.
struct ScalingFit {
    double alpha = 0.0;
    double log_phi = 0.0;
    double se_alpha = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    double r2 = 0.0;
    ScaleRange range;
    std::size_t n_points = 0;
    /// Points inside the range that had F == 0 and were left out.
    std::size_t zero_points = 0;
    /// Set when more than 20% of the in-range points had F == 0.
    bool degenerate_activity = false;
};

/// Multiplier for the 95% interval reported alongside alpha.
inline constexpr double kCiMultiplier = 1.96;

/// OLS on (log10 n, log10 F) over the points whose n lies in `range` (inclusive, all
/// points when absent). F == 0 points are excluded and counted.
/// Throws DegenerateCurve when every in-range F is zero and InsufficientPoints when fewer
/// than three usable points remain.
[[nodiscard]] ScalingFit fit_scaling(const FluctuationCurve& c,
                                     std::optional<ScaleRange> range = std::nullopt);

struct LongMemoryTest {
    double d_hat = 0.0;
    double z = 0.0;
    double p_value = 1.0;
    bool reject_at_5pct = false;
};

/// Two-sided 97.5% standard normal quantile used as the rejection boundary.
inline constexpr double kZ975 = 1.959963984540054;

/// Z-test of H0: d = 0 with d_hat = alpha - 0.5 and z = d_hat / se_alpha.
/// A zero standard error with d_hat != 0 yields z = +/-inf and p = 0; with d_hat == 0 it
/// throws NoVariance.
[[nodiscard]] LongMemoryTest test_long_memory(const ScalingFit& fit);

struct LocalSlopePoint {
    double log10_n_center = 0.0;
    double alpha = 0.0;
    double r2 = 0.0;
};

struct LocalSlopeCurve {
    std::size_t window = 0;
    std::vector<LocalSlopePoint> points;
};

/// Sliding OLS over `window` consecutive usable (F > 0) log-log points; the center is the
/// mean log10 n of the window. Throws InsufficientPoints when window < 3 or exceeds the
/// number of usable points.
[[nodiscard]] LocalSlopeCurve local_slopes(const FluctuationCurve& c, std::size_t window);

struct CrossoverOptions {
    /// Required BIC improvement of the two-segment model.
    double bic_threshold = 6.0;
    std::size_t min_segment_points = 3;
    /// Candidate breakpoints per gap between adjacent abscissae.
    int subdivisions = 8;
    /// Each segment must cover at least this many decades of n.
    double min_segment_decades = 0.5;
    /// Smallest |alpha2 - alpha1| reported as a crossover. Noise-only curves of 30k samples
    /// routinely produce BIC-significant bends with slope changes of 0.1-0.2.
    double min_slope_change = 0.3;
};

struct CrossoverReport {
    bool has_crossover = false;
    double break_log10_n = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double r2_1 = 0.0;
    double r2_2 = 0.0;
    /// BIC(one line) - BIC(two segments); positive favours the crossover.
    double delta_bic = 0.0;
    std::size_t n_points = 0;
};

/// Continuous two-segment (hinge) least-squares fit on the usable log-log points versus a
/// single line. The best hinge is found by exhaustive search over candidate breakpoints
/// that leave at least min_segment_points on each side. Breakpoint fields are filled even
/// when has_crossover is false. Throws InsufficientPoints below eight usable points.
[[nodiscard]] CrossoverReport detect_crossover(const FluctuationCurve& c,
                                               const CrossoverOptions& options = {});

enum class SweepClass {
    NoCrossover,
    /// A crossover present at some order disappears at a higher one.
    Artificial,
    /// Crossover at every order with breakpoints within 0.3 decades.
    Persistent,
    /// Any other pattern (e.g. crossovers only at high orders, or scattered breakpoints).
    Inconclusive,
};

[[nodiscard]] std::string to_string(SweepClass c);

struct SweepOrderResult {
    int order = 1;
    FluctuationCurve curve;
    CrossoverReport crossover;
};

struct DetrendingSweep {
    std::vector<SweepOrderResult> orders;
    SweepClass classification = SweepClass::NoCrossover;
    /// Lowest swept order from which every higher order is crossover-free; empty when the
    /// highest order still shows a crossover.
    std::optional<int> recommended_order;
};

/// Maximum breakpoint spread (decades) for a persistent crossover.
inline constexpr double kPersistentSpread = 0.3;

/// Runs fluctuation_function + detect_crossover for each order (ascending) and classifies.
[[nodiscard]] DetrendingSweep detrending_sweep(std::span<const double> values,
                                               std::span<const int> orders,
                                               const ScaleConfig& scales = {},
                                               const CrossoverOptions& crossover = {});

/// Classification rule applied to per-order crossover flags/breakpoints (ascending order).
[[nodiscard]] SweepClass classify_sweep(std::span<const SweepOrderResult> results);

/// Lowest order from which every higher listed order is crossover-free (ascending input).
[[nodiscard]] std::optional<int> recommend_order(std::span<const SweepOrderResult> results);

/// Grid + curve + fit in one call.
struct DfaResult {
    FluctuationCurve curve;
    ScalingFit fit;
};

[[nodiscard]] DfaResult run_dfa(std::span<const double> values, int order,
                                const ScaleConfig& scales = {},
                                BlockCoverage coverage = BlockCoverage::FromStart);

struct DurationSweepEntry {
    double duration_s = 0.0;
    std::size_t length = 0;
    std::optional<ScalingFit> fit;
    /// Why the prefix was skipped, empty on success.
    std::string warning;
};

/// Scaling fit on each leading prefix of the given durations (seconds). Prefixes too short
/// for the order, or whose fit fails, are kept in the table with a warning and no fit.
[[nodiscard]] std::vector<DurationSweepEntry> duration_sweep(std::span<const double> values,
                                                             double dt,
                                                             std::span<const double> durations_s,
                                                             int order,
                                                             const ScaleConfig& scales = {});

}  // namespace lrdfa
