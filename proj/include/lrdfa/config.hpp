#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrdfa/dfa.hpp"
#include "lrdfa/events.hpp"

namespace lrdfa {

/// Settings for a batch run. Loaded from a flat `key=value` file; every key can also be
/// set individually (the CLI maps `--set key=value` onto apply_setting).
struct AnalysisConfig {
    std::vector<int> detrend_orders{1, 2, 3, 4};
    /// "quarter" (N/4) or "tenth" (N/10).
    std::string scale_cap = "quarter";
    double points_per_decade = 15.0;
    std::vector<std::size_t> local_slope_windows{5, 25, 50};
    double crossover_bic_threshold = 6.0;
    double crossover_min_segment_decades = 0.5;
    double crossover_min_slope_change = 0.3;
    double event_min_duration = 0.6;
    /// Prefix lengths for the duration sweep as fractions of each recording.
    std::vector<double> duration_sweep = {0.25, 0.5, 0.75, 1.0};
    int duration_sweep_order = 3;
    double periodicity_threshold = 10.0;
    /// "exact" or "log".
    std::string histogram_binning = "exact";
    double histogram_bins_per_decade = 10.0;
    std::size_t histogram_min_count = 5;
    double distribution_r2_margin = kDefaultR2Margin;
    /// White-noise replicates for an empirical alpha band per (length, order); 0 disables.
    std::size_t null_replicates = 0;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    /// Sampling interval for series without a metadata sidecar.
    std::optional<double> dt;

    [[nodiscard]] ScaleConfig scales() const;
    [[nodiscard]] CrossoverOptions crossover() const;
    [[nodiscard]] HistogramOptions histogram() const;
};

/// Sets one key. Throws Error(InvalidInput) for unknown keys or unparsable values.
void apply_setting(AnalysisConfig& config, const std::string& key, const std::string& value);

/// Checks cross-field constraints. Throws Error(InvalidInput).
void validate(const AnalysisConfig& config);

[[nodiscard]] AnalysisConfig parse_config(std::istream& in);
[[nodiscard]] AnalysisConfig load_config(const std::filesystem::path& path);

/// Effective settings in a fixed key order, formatted as they would be written to a file.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> config_entries(const AnalysisConfig& config);

}  // namespace lrdfa
