#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrdfa/core.hpp"
#include "lrdfa/dfa.hpp"
#include "lrdfa/events.hpp"
#include "lrdfa/spectrum.hpp"

namespace lrdfa::io {

/// `%.6g`-style rendering used for every table.
[[nodiscard]] std::string format_sig(double v, int digits = 6);

/// Parses a decimal number (C locale). Throws InvalidInput naming `what`.
[[nodiscard]] double parse_double(std::string_view text, std::string_view what);

/// Tracking CSV with header `t,x,y`.
[[nodiscard]] std::vector<TrackFix> read_tracking_csv(std::istream& in);
[[nodiscard]] std::vector<TrackFix> read_tracking_csv(const std::filesystem::path& path);

/// Series CSV with header `value`, one number per line.
[[nodiscard]] std::vector<double> read_series_csv(std::istream& in);
[[nodiscard]] std::vector<double> read_series_csv(const std::filesystem::path& path);

/// Writes the `value` column; whole numbers are written without a fraction, others with
/// 17 significant digits so they read back exactly.
void write_series_csv(std::ostream& out, std::span<const double> values);
void write_series_csv(const std::filesystem::path& path, std::span<const double> values);

/// Sidecar `<series>.meta`: `key=value` lines with dt, id, species, treatment.
struct SeriesMeta {
    std::optional<double> dt;
    SubjectInfo subject;
};

[[nodiscard]] std::filesystem::path meta_path(const std::filesystem::path& series);
[[nodiscard]] std::map<std::string, std::string> read_key_values(std::istream& in);
[[nodiscard]] SeriesMeta read_meta(const std::filesystem::path& path);
void write_meta(const std::filesystem::path& path, double dt, const SubjectInfo& subject);

/// Values plus metadata; the sidecar is optional. A missing id falls back to the file stem.
struct LoadedSeries {
    std::vector<double> values;
    SeriesMeta meta;
};

[[nodiscard]] LoadedSeries load_series(const std::filesystem::path& path);

void write_curve_csv(std::ostream& out, const FluctuationCurve& c);
void write_local_slopes_csv(std::ostream& out, const LocalSlopeCurve& c);
void write_events_csv(std::ostream& out, const EventRuns& runs);
void write_histogram_csv(std::ostream& out, const DurationHistogram& h);
void write_spectrum_csv(std::ostream& out, const PowerSpectrum& ps);
void write_duration_sweep_csv(std::ostream& out, std::span<const DurationSweepEntry> entries);

}  // namespace lrdfa::io
