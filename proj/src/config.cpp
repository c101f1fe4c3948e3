#include "lrdfa/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lrdfa/error.hpp"
#include "lrdfa/io.hpp"

namespace lrdfa {

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : value) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

template <typename Int>
Int parse_int(const std::string& text, const std::string& key) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorCode::InvalidInput, "invalid integer for " + key + ": '" + text + "'");
    }
    return v;
}

double parse_real(const std::string& text, const std::string& key) {
    const double v = io::parse_double(text, key);
    if (std::isnan(v)) throw Error(ErrorCode::InvalidInput, key + " must be a number");
    return v;
}

std::string join(const auto& values, auto&& fmt) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ',';
        out += fmt(v);
    }
    return out;
}

std::string real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ScaleConfig AnalysisConfig::scales() const {
    ScaleConfig s;
    s.cap_fraction = scale_cap == "tenth" ? 0.1 : 0.25;
    s.points_per_decade = points_per_decade;
    return s;
}

CrossoverOptions AnalysisConfig::crossover() const {
    CrossoverOptions c;
    c.bic_threshold = crossover_bic_threshold;
    c.min_segment_decades = crossover_min_segment_decades;
    c.min_slope_change = crossover_min_slope_change;
    return c;
}

HistogramOptions AnalysisConfig::histogram() const {
    HistogramOptions h;
    h.binning = histogram_binning == "log" ? Binning::Logarithmic : Binning::Exact;
    h.bins_per_decade = histogram_bins_per_decade;
    h.min_count = histogram_min_count;
    return h;
}

void apply_setting(AnalysisConfig& c, const std::string& key, const std::string& value) {
    if (key == "detrend_orders") {
        c.detrend_orders.clear();
        for (const auto& item : split_list(value)) c.detrend_orders.push_back(parse_int<int>(item, key));
    } else if (key == "scale_cap") {
        c.scale_cap = value;
    } else if (key == "points_per_decade") {
        c.points_per_decade = parse_real(value, key);
    } else if (key == "local_slope_windows") {
        c.local_slope_windows.clear();
        for (const auto& item : split_list(value)) {
            c.local_slope_windows.push_back(parse_int<std::size_t>(item, key));
        }
    } else if (key == "crossover_bic_threshold") {
        c.crossover_bic_threshold = parse_real(value, key);
    } else if (key == "crossover_min_segment_decades") {
        c.crossover_min_segment_decades = parse_real(value, key);
    } else if (key == "crossover_min_slope_change") {
        c.crossover_min_slope_change = parse_real(value, key);
    } else if (key == "event_min_duration") {
        c.event_min_duration = parse_real(value, key);
    } else if (key == "duration_sweep") {
        c.duration_sweep.clear();
        for (const auto& item : split_list(value)) c.duration_sweep.push_back(parse_real(item, key));
    } else if (key == "duration_sweep_order") {
        c.duration_sweep_order = parse_int<int>(value, key);
    } else if (key == "periodicity_threshold") {
        c.periodicity_threshold = parse_real(value, key);
    } else if (key == "histogram_binning") {
        c.histogram_binning = value;
    } else if (key == "histogram_bins_per_decade") {
        c.histogram_bins_per_decade = parse_real(value, key);
    } else if (key == "histogram_min_count") {
        c.histogram_min_count = parse_int<std::size_t>(value, key);
    } else if (key == "distribution_r2_margin") {
        c.distribution_r2_margin = parse_real(value, key);
    } else if (key == "null_replicates") {
        c.null_replicates = parse_int<std::size_t>(value, key);
    } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(value, key);
    } else if (key == "workers") {
        c.workers = parse_int<unsigned>(value, key);
    } else if (key == "dt") {
        c.dt = parse_real(value, key);
    } else {
        throw Error(ErrorCode::InvalidInput, "unknown configuration key '" + key + "'");
    }
}

void validate(const AnalysisConfig& c) {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); };
    if (c.detrend_orders.empty()) fail("detrend_orders must not be empty");
    for (int m : c.detrend_orders) {
        if (m < 1 || m > 10) fail("detrend orders must lie in 1..10");
    }
    if (c.scale_cap != "quarter" && c.scale_cap != "tenth") fail("scale_cap must be quarter or tenth");
    if (!(c.points_per_decade > 0.0) || !std::isfinite(c.points_per_decade)) {
        fail("points_per_decade must be positive");
    }
    for (std::size_t w : c.local_slope_windows) {
        if (w < 3) fail("local slope windows must be at least 3");
    }
    if (!std::isfinite(c.crossover_bic_threshold)) fail("crossover_bic_threshold must be finite");
    if (!(c.crossover_min_segment_decades >= 0.0)) fail("crossover_min_segment_decades must be >= 0");
    if (!(c.crossover_min_slope_change >= 0.0)) fail("crossover_min_slope_change must be >= 0");
    if (!(c.event_min_duration >= 0.0) || !std::isfinite(c.event_min_duration)) {
        fail("event_min_duration must be >= 0");
    }
    for (double f : c.duration_sweep) {
        if (!(f > 0.0 && f <= 1.0)) fail("duration_sweep fractions must lie in (0, 1]");
    }
    if (!std::is_sorted(c.duration_sweep.begin(), c.duration_sweep.end())) {
        fail("duration_sweep fractions must be increasing");
    }
    if (c.duration_sweep_order < 1 || c.duration_sweep_order > 10) fail("duration_sweep_order must lie in 1..10");
    if (!(c.periodicity_threshold > 0.0)) fail("periodicity_threshold must be positive");
    if (c.histogram_binning != "exact" && c.histogram_binning != "log") {
        fail("histogram_binning must be exact or log");
    }
    if (!(c.histogram_bins_per_decade > 0.0)) fail("histogram_bins_per_decade must be positive");
    if (!(c.distribution_r2_margin >= 0.0)) fail("distribution_r2_margin must be >= 0");
    if (c.null_replicates == 1) fail("null_replicates must be 0 or at least 2");
    if (c.workers < 1) fail("workers must be at least 1");
    if (c.dt && (!(*c.dt > 0.0) || !std::isfinite(*c.dt))) fail("dt must be positive");
}

AnalysisConfig parse_config(std::istream& in) {
    AnalysisConfig c;
    for (const auto& [key, value] : io::read_key_values(in)) apply_setting(c, key, value);
    validate(c);
    return c;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open config " + path.string());
    return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> config_entries(const AnalysisConfig& c) {
    auto integer = [](auto v) { return std::to_string(v); };
    return {
        {"detrend_orders", join(c.detrend_orders, integer)},
        {"scale_cap", c.scale_cap},
        {"points_per_decade", real(c.points_per_decade)},
        {"local_slope_windows", join(c.local_slope_windows, integer)},
        {"crossover_bic_threshold", real(c.crossover_bic_threshold)},
        {"crossover_min_segment_decades", real(c.crossover_min_segment_decades)},
        {"crossover_min_slope_change", real(c.crossover_min_slope_change)},
        {"event_min_duration", real(c.event_min_duration)},
        {"duration_sweep", join(c.duration_sweep, real)},
        {"duration_sweep_order", std::to_string(c.duration_sweep_order)},
        {"periodicity_threshold", real(c.periodicity_threshold)},
        {"histogram_binning", c.histogram_binning},
        {"histogram_bins_per_decade", real(c.histogram_bins_per_decade)},
        {"histogram_min_count", std::to_string(c.histogram_min_count)},
        {"distribution_r2_margin", real(c.distribution_r2_margin)},
        {"null_replicates", std::to_string(c.null_replicates)},
        {"seed", std::to_string(c.seed)},
        {"workers", std::to_string(c.workers)},
        {"dt", c.dt ? real(*c.dt) : std::string()},
    };
}

}  // namespace lrdfa
