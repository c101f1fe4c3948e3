// Command-line front end: one subcommand per analysis step plus `report` for batches.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrdfa/config.hpp"
#include "lrdfa/core.hpp"
#include "lrdfa/dfa.hpp"
#include "lrdfa/error.hpp"
#include "lrdfa/events.hpp"
#include "lrdfa/io.hpp"
#include "lrdfa/pipeline.hpp"
#include "lrdfa/serialize.hpp"
#include "lrdfa/spectrum.hpp"
#include "lrdfa/surrogate.hpp"

namespace {

using namespace lrdfa;

constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;

struct SeriesArgs {
    std::string input;
    std::optional<double> dt;
};

void add_series_args(CLI::App* cmd, SeriesArgs& a) {
    cmd->add_option("-i,--input", a.input, "Series CSV (header 'value')")->required()->check(CLI::ExistingFile);
    cmd->add_option("--dt", a.dt, "Sampling interval in seconds (overrides the .meta sidecar)");
}

io::LoadedSeries load(const SeriesArgs& a) {
    io::LoadedSeries s = io::load_series(a.input);
    if (a.dt) s.meta.dt = a.dt;
    return s;
}

double require_dt(const io::LoadedSeries& s) {
    if (!s.meta.dt) throw Error(ErrorCode::InvalidInput, "no sampling interval: pass --dt or add dt to the .meta file");
    return *s.meta.dt;
}

ScaleConfig scale_config(const std::string& cap, double ppd) {
    ScaleConfig sc;
    if (cap == "tenth") {
        sc.cap_fraction = 0.1;
    } else if (cap != "quarter") {
        throw Error(ErrorCode::InvalidInput, "--cap must be quarter or tenth");
    }
    sc.points_per_decade = ppd;
    return sc;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(io::parse_double(cur, "coefficient list"));
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    return out;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-range correlation analysis of behavioural time series (DFA)"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Binarize tracker coordinates into a series CSV");
    std::string track_in;
    std::string ingest_out;
    double ingest_dt = 0.0;
    double epsilon = 0.0;
    SubjectInfo subject;
    ingest->add_option("-t,--tracking", track_in, "Tracking CSV (header 't,x,y')")->required()->check(CLI::ExistingFile);
    ingest->add_option("--dt", ingest_dt, "Sampling interval in seconds")->required();
    ingest->add_option("--epsilon", epsilon, "Displacement above which an interval counts as mobile");
    ingest->add_option("-o,--out", ingest_out, "Output series CSV; a .meta sidecar is written next to it")->required();
    ingest->add_option("--id", subject.id, "Subject id");
    ingest->add_option("--species", subject.species, "Species tag");
    ingest->add_option("--treatment", subject.treatment, "Treatment tag");

    // dfa
    auto* dfa = app.add_subcommand("dfa", "Fluctuation function, scaling fit and d = 0 test");
    SeriesArgs dfa_in;
    add_series_args(dfa, dfa_in);
    int order = 1;
    std::string cap = "quarter";
    double ppd = 15.0;
    std::string curve_out;
    bool both_ends = false;
    std::vector<std::size_t> windows;
    dfa->add_option("-m,--order", order, "Detrending order")->check(CLI::Range(1, 10));
    dfa->add_option("--cap", cap, "Largest block: quarter (N/4) or tenth (N/10)");
    dfa->add_option("--points-per-decade", ppd, "Scale grid density");
    dfa->add_option("--curve-out", curve_out, "Write the fluctuation curve CSV here");
    dfa->add_flag("--both-ends", both_ends, "Also use blocks aligned to the end of the series");
    dfa->add_option("--window", windows, "Local-slope window sizes to report");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Detrending-order sweep with crossover classification");
    SeriesArgs sweep_in;
    add_series_args(sweep, sweep_in);
    std::vector<int> orders{1, 2, 3, 4};
    CrossoverOptions copts;
    std::string sweep_cap = "quarter";
    double sweep_ppd = 15.0;
    sweep->add_option("--orders", orders, "Detrending orders")->delimiter(',');
    sweep->add_option("--cap", sweep_cap, "Largest block: quarter or tenth");
    sweep->add_option("--points-per-decade", sweep_ppd, "Scale grid density");
    sweep->add_option("--bic-threshold", copts.bic_threshold, "BIC improvement required for a crossover");
    sweep->add_option("--min-segment-decades", copts.min_segment_decades, "Minimum span of each segment");
    sweep->add_option("--min-slope-change", copts.min_slope_change, "Minimum slope change for a crossover");

    // events
    auto* events = app.add_subcommand("events", "Event extraction and duration-distribution fits");
    SeriesArgs ev_in;
    add_series_args(events, ev_in);
    double min_duration = 0.6;
    std::string events_out;
    std::string hist_prefix;
    std::string binning = "exact";
    HistogramOptions hopts;
    events->add_option("--min-duration", min_duration, "Events must last longer than this (seconds)");
    events->add_option("--events-out", events_out, "Write events CSV here");
    events->add_option("--hist-prefix", hist_prefix, "Write <prefix>_immobile.csv and <prefix>_mobile.csv");
    events->add_option("--binning", binning, "exact or log")->check(CLI::IsMember({"exact", "log"}));
    events->add_option("--bins-per-decade", hopts.bins_per_decade, "Log binning density");
    events->add_option("--min-count", hopts.min_count, "Log binning: stop at the first bin with fewer events");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Periodogram and periodicity check");
    SeriesArgs sp_in;
    add_series_args(spectrum, sp_in);
    std::string spectrum_out;
    double threshold = kDefaultPeriodicityRatio;
    spectrum->add_option("-o,--out", spectrum_out, "Write spectrum CSV here");
    spectrum->add_option("--threshold", threshold, "Peak-to-median power ratio flagged as periodic");

    // surrogate
    auto* surrogate = app.add_subcommand("surrogate", "Generate an ARFIMA(p,d,q) series, optionally with a trend");
    ArfimaParams model;
    std::string ar_text;
    std::string ma_text;
    std::size_t length = 0;
    std::uint64_t seed = 1;
    std::string trend = "none";
    TrendSpec tspec;
    bool binarize = false;
    double sur_dt = 1.0;
    std::string sur_out;
    SubjectInfo sur_subject;
    surrogate->add_option("-d,--d", model.d, "Fractional parameter in (-0.5, 0.5)");
    surrogate->add_option("--ar", ar_text, "AR coefficients, comma separated");
    surrogate->add_option("--ma", ma_text, "MA coefficients, comma separated");
    surrogate->add_option("--sd", model.innovation_sd, "Innovation standard deviation");
    surrogate->add_option("-n,--length", length, "Number of samples")->required();
    surrogate->add_option("--seed", seed, "Random seed");
    surrogate->add_option("--trend", trend, "none, polynomial or sinusoidal")
        ->check(CLI::IsMember({"none", "polynomial", "sinusoidal"}));
    surrogate->add_option("--amplitude", tspec.amplitude, "Trend amplitude");
    surrogate->add_option("--power", tspec.power, "Polynomial trend exponent");
    surrogate->add_option("--period", tspec.period, "Sinusoid period in samples");
    surrogate->add_flag("--binarize", binarize, "Threshold at the median into 0/1");
    surrogate->add_option("--dt", sur_dt, "Sampling interval recorded in the .meta sidecar");
    surrogate->add_option("--id", sur_subject.id, "Subject id");
    surrogate->add_option("--species", sur_subject.species, "Species tag");
    surrogate->add_option("--treatment", sur_subject.treatment, "Treatment tag");
    surrogate->add_option("-o,--out", sur_out, "Output series CSV")->required();

    // report
    auto* report = app.add_subcommand("report", "Full batch analysis into a report directory");
    std::string config_path;
    std::vector<std::string> settings;
    std::string out_dir;
    std::vector<std::string> inputs;
    report->add_option("-c,--config", config_path, "key=value configuration file");
    report->add_option("--set", settings, "Override one setting, key=value (repeatable)");
    report->add_option("-o,--out", out_dir, "Report directory")->required();
    report->add_option("inputs", inputs, "Series CSV files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadConfig;
    }

    try {
        if (*ingest) {
            const auto rows = io::read_tracking_csv(track_in);
            if (subject.id.empty()) subject.id = std::filesystem::path(ingest_out).stem().string();
            const BehaviorSeries s = ingest_tracking(rows, ingest_dt, epsilon, subject);
            io::write_series_csv(ingest_out, s.as_real());
            io::write_meta(io::meta_path(ingest_out), s.dt(), s.subject());
            print(Json{{"samples", s.size()}, {"percent_time_ambulating", json_number(percent_time_ambulating(s))}});
        } else if (*dfa) {
            const auto s = load(dfa_in);
            const Profile p = profile(s.values, s.meta.dt.value_or(1.0));
            const auto grid = default_scales(s.values.size(), order, scale_config(cap, ppd));
            const FluctuationCurve curve =
                fluctuation_function(p, order, grid, both_ends ? BlockCoverage::BothEnds : BlockCoverage::FromStart);
            if (!curve_out.empty()) {
                std::ofstream out(curve_out, std::ios::binary);
                io::write_curve_csv(out, curve);
            }
            Json j{{"id", s.meta.subject.id}, {"order", order}, {"length", s.values.size()}};
            const ScalingFit fit = fit_scaling(curve);
            j["fit"] = to_json(fit);
            try {
                j["test"] = to_json(test_long_memory(fit));
            } catch (const Error& e) {
                j["test"] = Json{{"error", e.what()}};
            }
            Json jl = Json::array();
            for (std::size_t w : windows) {
                const LocalSlopeCurve lc = local_slopes(curve, w);
                Json pts = Json::array();
                for (const auto& pt : lc.points) {
                    pts.push_back(Json::array({json_number(pt.log10_n_center), json_number(pt.alpha), json_number(pt.r2)}));
                }
                jl.push_back(Json{{"window", w}, {"points", std::move(pts)}});
            }
            if (!windows.empty()) j["local_slopes"] = std::move(jl);
            print(j);
        } else if (*sweep) {
            const auto s = load(sweep_in);
            const DetrendingSweep r = detrending_sweep(s.values, orders, scale_config(sweep_cap, sweep_ppd), copts);
            Json jo = Json::array();
            for (const auto& o : r.orders) {
                Json e{{"order", o.order}, {"crossover", to_json(o.crossover)}};
                try {
                    e["fit"] = to_json(fit_scaling(o.curve));
                } catch (const Error& err) {
                    e["fit"] = Json{{"error", err.what()}};
                }
                jo.push_back(std::move(e));
            }
            print(Json{{"id", s.meta.subject.id},
                       {"orders", std::move(jo)},
                       {"classification", to_string(r.classification)},
                       {"recommended_order", r.recommended_order ? Json(*r.recommended_order) : Json(nullptr)}});
        } else if (*events) {
            const auto s = load(ev_in);
            const BehaviorSeries series = BehaviorSeries::from_real(s.values, require_dt(s), s.meta.subject);
            const EventRuns runs = extract_events(series, min_duration);
            if (!events_out.empty()) {
                std::ofstream out(events_out, std::ios::binary);
                io::write_events_csv(out, runs);
            }
            hopts.binning = binning == "log" ? Binning::Logarithmic : Binning::Exact;
            Json j{{"id", s.meta.subject.id}, {"events", runs.events.size()}};
            for (State st : {State::Immobile, State::Mobile}) {
                try {
                    const DurationHistogram h = duration_histogram(runs.events, st, hopts);
                    if (!hist_prefix.empty()) {
                        std::ofstream out(hist_prefix + "_" + to_string(st) + ".csv", std::ios::binary);
                        io::write_histogram_csv(out, h);
                    }
                    j[to_string(st)] = to_json(classify_distribution(h));
                } catch (const Error& e) {
                    j[to_string(st)] = Json{{"error", e.what()}};
                }
            }
            print(j);
        } else if (*spectrum) {
            const auto s = load(sp_in);
            const PowerSpectrum ps = periodogram(s.values);
            if (!spectrum_out.empty()) {
                std::ofstream out(spectrum_out, std::ios::binary);
                io::write_spectrum_csv(out, ps);
            }
            Json j = to_json(detect_periodicity(ps, threshold));
            j["threshold"] = json_number(threshold);
            print(j);
        } else if (*surrogate) {
            model.ar = parse_list(ar_text);
            model.ma = parse_list(ma_text);
            std::vector<double> x = gen_arfima(model, length, seed);
            if (trend == "polynomial") {
                tspec.kind = TrendSpec::Kind::Polynomial;
                x = add_trend(x, tspec);
            } else if (trend == "sinusoidal") {
                tspec.kind = TrendSpec::Kind::Sinusoidal;
                x = add_trend(x, tspec);
            }
            if (binarize) {
                const auto bits = binarize_at_median(x);
                x.assign(bits.begin(), bits.end());
            }
            io::write_series_csv(sur_out, x);
            if (sur_subject.id.empty()) sur_subject.id = std::filesystem::path(sur_out).stem().string();
            io::write_meta(io::meta_path(sur_out), sur_dt, sur_subject);
        } else if (*report) {
            AnalysisConfig config;
            try {
                if (!config_path.empty()) config = load_config(config_path);
                for (const auto& kv : settings) {
                    const auto eq = kv.find('=');
                    if (eq == std::string::npos) throw Error(ErrorCode::InvalidInput, "--set expects key=value");
                    apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
                }
                validate(config);
            } catch (const Error& e) {
                std::cerr << "invalid configuration: " << e.what() << '\n';
                return kExitBadConfig;
            }
            std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
            const ReportBundle bundle = run_pipeline(config, paths);
            write_bundle(bundle, out_dir);
            for (const auto& f : bundle.failures) std::cerr << "failed: " << f << '\n';
            return bundle.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
