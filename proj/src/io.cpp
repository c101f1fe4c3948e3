#include "lrdfa/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "lrdfa/error.hpp"

namespace lrdfa::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    return out;
}

// Reads the header and checks it against `expected`; blank lines are skipped everywhere.
template <typename Row>
void for_each_row(std::istream& in, std::string_view expected, Row&& row) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) continue;
        if (!header) {
            if (t != expected) {
                throw Error(ErrorCode::InvalidInput,
                            "expected header '" + std::string(expected) + "', got '" + std::string(t) + "'",
                            line_no);
            }
            header = true;
            continue;
        }
        row(t, line_no);
    }
    if (!header) throw Error(ErrorCode::InvalidInput, "missing header '" + std::string(expected) + "'");
}

}  // namespace

std::string format_sig(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorCode::InvalidInput,
                    "invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

std::vector<TrackFix> read_tracking_csv(std::istream& in) {
    std::vector<TrackFix> rows;
    for_each_row(in, "t,x,y", [&](std::string_view line, std::size_t line_no) {
        const auto cells = split(line, ',');
        if (cells.size() != 3) {
            throw Error(ErrorCode::InvalidInput, "tracking rows need 3 columns", line_no);
        }
        try {
            rows.push_back({parse_double(cells[0], "t"), parse_double(cells[1], "x"),
                            parse_double(cells[2], "y")});
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()), line_no);
        }
    });
    return rows;
}

std::vector<TrackFix> read_tracking_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_tracking_csv(in);
}

std::vector<double> read_series_csv(std::istream& in) {
    std::vector<double> values;
    for_each_row(in, "value", [&](std::string_view line, std::size_t line_no) {
        try {
            values.push_back(parse_double(line, "value"));
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()), line_no);
        }
        if (!std::isfinite(values.back())) {
            throw Error(ErrorCode::InvalidInput, "non-finite value", line_no);
        }
    });
    if (values.empty()) throw Error(ErrorCode::InvalidInput, "series file has no values");
    return values;
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_series_csv(in);
}

void write_series_csv(std::ostream& out, std::span<const double> values) {
    out << "value\n";
    char buf[64];
    for (double v : values) {
        if (v == std::floor(v) && std::abs(v) < 1e15) {
            std::snprintf(buf, sizeof buf, "%.0f\n", v);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
        }
        out << buf;
    }
}

void write_series_csv(const std::filesystem::path& path, std::span<const double> values) {
    auto out = open_out(path);
    write_series_csv(out, values);
}

std::filesystem::path meta_path(const std::filesystem::path& series) {
    return std::filesystem::path(series.string() + ".meta");
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidInput, "expected key=value, got '" + std::string(t) + "'", line_no);
        }
        const auto key = trim(t.substr(0, eq));
        if (key.empty()) throw Error(ErrorCode::InvalidInput, "empty key", line_no);
        kv[std::string(key)] = std::string(trim(t.substr(eq + 1)));
    }
    return kv;
}

SeriesMeta read_meta(const std::filesystem::path& path) {
    auto in = open_in(path);
    SeriesMeta meta;
    for (const auto& [key, value] : read_key_values(in)) {
        if (key == "dt") {
            meta.dt = parse_double(value, "dt");
        } else if (key == "id") {
            meta.subject.id = value;
        } else if (key == "species") {
            meta.subject.species = value;
        } else if (key == "treatment") {
            meta.subject.treatment = value;
        } else {
            throw Error(ErrorCode::InvalidInput, "unknown metadata key '" + key + "' in " + path.string());
        }
    }
    return meta;
}

void write_meta(const std::filesystem::path& path, double dt, const SubjectInfo& subject) {
    auto out = open_out(path);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", dt);
    out << "dt=" << buf << '\n';
    if (!subject.id.empty()) out << "id=" << subject.id << '\n';
    if (!subject.species.empty()) out << "species=" << subject.species << '\n';
    if (!subject.treatment.empty()) out << "treatment=" << subject.treatment << '\n';
}

LoadedSeries load_series(const std::filesystem::path& path) {
    LoadedSeries s;
    s.values = read_series_csv(path);
    const auto meta = meta_path(path);
    if (std::filesystem::exists(meta)) s.meta = read_meta(meta);
    if (s.meta.subject.id.empty()) s.meta.subject.id = path.stem().string();
    return s;
}

void write_curve_csv(std::ostream& out, const FluctuationCurve& c) {
    out << "n,log10_n,F,log10_F\n";
    for (const auto& p : c.points) {
        const auto n = static_cast<double>(p.n);
        out << p.n << ',' << format_sig(std::log10(n)) << ',' << format_sig(p.F) << ','
            << format_sig(p.F > 0.0 ? std::log10(p.F) : -INFINITY) << '\n';
    }
}

void write_local_slopes_csv(std::ostream& out, const LocalSlopeCurve& c) {
    out << "log10_n_center,alpha,r2\n";
    for (const auto& p : c.points) {
        out << format_sig(p.log10_n_center) << ',' << format_sig(p.alpha) << ',' << format_sig(p.r2) << '\n';
    }
}

void write_events_csv(std::ostream& out, const EventRuns& runs) {
    out << "state,duration_s\n";
    for (const auto& e : runs.events) out << to_string(e.state) << ',' << format_sig(e.duration_s) << '\n';
}

void write_histogram_csv(std::ostream& out, const DurationHistogram& h) {
    out << "duration_s,frequency\n";
    for (const auto& b : h.bins) out << format_sig(b.duration_s) << ',' << format_sig(b.frequency) << '\n';
}

void write_spectrum_csv(std::ostream& out, const PowerSpectrum& ps) {
    out << "freq_cycles_per_sample,power\n";
    for (std::size_t i = 0; i < ps.freqs.size(); ++i) {
        out << format_sig(ps.freqs[i]) << ',' << format_sig(ps.power[i]) << '\n';
    }
}

void write_duration_sweep_csv(std::ostream& out, std::span<const DurationSweepEntry> entries) {
    out << "duration_s,length,alpha,se_alpha,r2,warning\n";
    for (const auto& e : entries) {
        out << format_sig(e.duration_s) << ',' << e.length << ',';
        if (e.fit) {
            out << format_sig(e.fit->alpha) << ',' << format_sig(e.fit->se_alpha) << ','
                << format_sig(e.fit->r2);
        } else {
            out << ",,";
        }
        out << ',';
        if (!e.warning.empty()) {
            std::string quoted = e.warning;
            for (std::size_t pos = 0; (pos = quoted.find('"', pos)) != std::string::npos; pos += 2) {
                quoted.insert(pos, 1, '"');
            }
            out << '"' << quoted << '"';
        }
        out << '\n';
    }
}

}  // namespace lrdfa::io
