#include "lrdfa/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "lrdfa/core.hpp"
#include "lrdfa/dfa.hpp"
#include "lrdfa/error.hpp"
#include "lrdfa/events.hpp"
#include "lrdfa/io.hpp"
#include "lrdfa/spectrum.hpp"
#include "lrdfa/serialize.hpp"
#include "lrdfa/surrogate.hpp"
#include "parallel.hpp"

namespace lrdfa {

namespace {

std::string sanitize(const std::string& id) {
    std::string out;
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '.' || ch == '_' || ch == '-';
        out.push_back(ok ? ch : '_');
    }
    if (out.empty() || out == "." || out == "..") out = "series";
    return out;
}

std::string group_key(const SubjectInfo& s) {
    return (s.species.empty() ? "unspecified" : s.species) + "/" +
           (s.treatment.empty() ? "unspecified" : s.treatment);
}

template <typename Writer>
std::string render(Writer&& w) {
    std::ostringstream out;
    w(out);
    return out.str();
}

struct Input {
    std::filesystem::path path;
    std::vector<double> values;
    double dt = 1.0;
    SubjectInfo subject;
    std::string dir;  // sanitized, unique
    bool binary = false;
    std::size_t input_index = 0;
};

struct OrderSummary {
    int order = 0;
    std::optional<ScalingFit> fit;
    std::optional<LongMemoryTest> test;
    std::string status;
};

struct SeriesOutput {
    Json json;
    std::map<std::string, std::string> files;
    std::vector<OrderSummary> orders;
    std::optional<EventRuns> events;
    std::map<State, double> power_law_slope;
};

using NullKey = std::pair<std::size_t, int>;

SeriesOutput analyse(const Input& in, const AnalysisConfig& cfg, const std::vector<int>& orders,
                     const std::map<NullKey, EmpiricalCi>& null_bands) {
    SeriesOutput out;
    Json& j = out.json;
    const std::string prefix = "series/" + in.dir + "/";
    const std::size_t n = in.values.size();
    j["id"] = in.subject.id;
    j["source"] = in.path.filename().string();
    j["group"] = group_key(in.subject);
    j["species"] = in.subject.species;
    j["treatment"] = in.subject.treatment;
    j["length"] = n;
    j["dt"] = json_number(in.dt);
    j["binary"] = in.binary;

    std::optional<BehaviorSeries> series;
    if (in.binary) {
        series = BehaviorSeries::from_real(in.values, in.dt, in.subject);
        j["percent_time_ambulating"] = json_number(percent_time_ambulating(*series));
        j["percent_time_immobile"] = json_number(percent_time_immobile(*series));
    } else {
        j["percent_time_ambulating"] = nullptr;
        j["percent_time_immobile"] = nullptr;
    }

    if (n >= 16) {
        const PowerSpectrum ps = periodogram(in.values);
        const PeriodicityVerdict v = detect_periodicity(ps, cfg.periodicity_threshold);
        j["periodicity"] = to_json(v);
        j["periodicity"]["threshold"] = json_number(cfg.periodicity_threshold);
        out.files[prefix + "spectrum.csv"] = render([&](std::ostream& o) { io::write_spectrum_csv(o, ps); });
    } else {
        j["periodicity"] = Json{{"error", "series shorter than 16 samples"}};
    }

    const Profile prof = profile(in.values, in.dt);
    const ScaleConfig scales = cfg.scales();
    const CrossoverOptions copts = cfg.crossover();
    std::vector<SweepOrderResult> sweep;
    bool sweep_complete = true;
    Json jorders = Json::array();
    for (int m : orders) {
        Json o;
        o["order"] = m;
        OrderSummary summary;
        summary.order = m;
        FluctuationCurve curve;
        try {
            const auto grid = default_scales(n, m, scales);
            curve = fluctuation_function(prof, m, grid);
        } catch (const Error& e) {
            o["status"] = "error";
            o["error"] = e.what();
            summary.status = "error";
            out.orders.push_back(summary);
            jorders.push_back(std::move(o));
            sweep_complete = false;
            continue;
        }
        const std::string tag = "dfa" + std::to_string(m);
        out.files[prefix + "curve_" + tag + ".csv"] = render([&](std::ostream& s) { io::write_curve_csv(s, curve); });
        o["scales"] = curve.points.size();

        try {
            const ScalingFit fit = fit_scaling(curve);
            summary.fit = fit;
            summary.status = fit.degenerate_activity ? "degenerate-activity" : "ok";
            o["status"] = summary.status;
            o["fit"] = to_json(fit);
            try {
                summary.test = test_long_memory(fit);
                o["test"] = to_json(*summary.test);
            } catch (const Error& e) {
                o["test"] = Json{{"error", e.what()}};
            }
        } catch (const Error& e) {
            summary.status = e.code() == ErrorCode::DegenerateCurve ? "degenerate-activity" : "error";
            o["status"] = summary.status;
            o["error"] = e.what();
        }

        try {
            SweepOrderResult r;
            r.order = m;
            r.crossover = detect_crossover(curve, copts);
            o["crossover"] = to_json(r.crossover);
            sweep.push_back(std::move(r));
        } catch (const Error& e) {
            o["crossover"] = Json{{"error", e.what()}};
            sweep_complete = false;
        }

        Json jl = Json::array();
        for (std::size_t w : cfg.local_slope_windows) {
            try {
                const LocalSlopeCurve lc = local_slopes(curve, w);
                double lo = INFINITY;
                double hi = -INFINITY;
                for (const auto& p : lc.points) {
                    lo = std::min(lo, p.alpha);
                    hi = std::max(hi, p.alpha);
                }
                jl.push_back(Json{{"window", w}, {"placements", lc.points.size()},
                                  {"min_alpha", json_number(lo)}, {"max_alpha", json_number(hi)}});
                out.files[prefix + "local_slopes_" + tag + "_w" + std::to_string(w) + ".csv"] =
                    render([&](std::ostream& s) { io::write_local_slopes_csv(s, lc); });
            } catch (const Error& e) {
                jl.push_back(Json{{"window", w}, {"error", e.what()}});
            }
        }
        o["local_slopes"] = std::move(jl);

        if (const auto it = null_bands.find({n, m}); it != null_bands.end()) {
            const EmpiricalCi& band = it->second;
            Json jb{{"mean", json_number(band.mean)}, {"sd", json_number(band.sd)}, {"q025", json_number(band.q025)},
                    {"q975", json_number(band.q975)}, {"replicates", band.replicates}};
            jb["alpha_inside"] = summary.fit ? Json(band.contains(summary.fit->alpha)) : Json(nullptr);
            o["null_band"] = std::move(jb);
        }
        out.orders.push_back(summary);
        jorders.push_back(std::move(o));
    }
    j["orders"] = std::move(jorders);

    if (sweep_complete && !sweep.empty()) {
        const auto rec = recommend_order(sweep);
        j["sweep"] = Json{{"classification", to_string(classify_sweep(sweep))},
                          {"recommended_order", rec ? Json(*rec) : Json(nullptr)}};
    } else {
        j["sweep"] = Json{{"classification", nullptr}, {"recommended_order", nullptr},
                          {"error", "crossover unavailable for some order"}};
    }

    {
        std::vector<double> durations;
        for (double f : cfg.duration_sweep) durations.push_back(f * static_cast<double>(n) * in.dt);
        try {
            const auto entries = duration_sweep(in.values, in.dt, durations, cfg.duration_sweep_order, scales);
            Json js = Json::array();
            for (const auto& e : entries) {
                Json je{{"duration_s", json_number(e.duration_s)}, {"length", e.length}};
                if (e.fit) {
                    je["alpha"] = json_number(e.fit->alpha);
                    je["se_alpha"] = json_number(e.fit->se_alpha);
                } else {
                    je["warning"] = e.warning;
                }
                js.push_back(std::move(je));
            }
            j["duration_sweep"] = Json{{"order", cfg.duration_sweep_order}, {"entries", std::move(js)}};
            out.files[prefix + "duration_sweep.csv"] =
                render([&](std::ostream& s) { io::write_duration_sweep_csv(s, entries); });
        } catch (const Error& e) {
            j["duration_sweep"] = Json{{"order", cfg.duration_sweep_order}, {"error", e.what()}};
        }
    }

    if (series) {
        EventRuns runs = extract_events(*series, cfg.event_min_duration);
        out.files[prefix + "events.csv"] = render([&](std::ostream& s) { io::write_events_csv(s, runs); });
        Json je;
        je["min_duration_s"] = json_number(cfg.event_min_duration);
        for (State st : {State::Immobile, State::Mobile}) {
            Json js;
            const auto count = std::count_if(runs.events.begin(), runs.events.end(),
                                             [&](const Event& e) { return e.state == st; });
            js["count"] = count;
            try {
                const DurationHistogram h = duration_histogram(runs.events, st, cfg.histogram());
                out.files[prefix + "hist_" + to_string(st) + ".csv"] =
                    render([&](std::ostream& s) { io::write_histogram_csv(s, h); });
                js["bins"] = h.bins.size();
                const auto cmp = classify_distribution(h, cfg.distribution_r2_margin);
                js["fits"] = to_json(cmp);
                out.power_law_slope[st] = cmp.power_law.slope;
            } catch (const Error& e) {
                js["error"] = e.what();
            }
            je[to_string(st)] = std::move(js);
        }
        j["events"] = std::move(je);
        out.events = std::move(runs);
    } else {
        j["events"] = Json{{"error", "events need a binary series"}};
    }
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + "  " : s + std::string(width - s.size() + 2, ' ');
}

std::string ci_cell(const OrderSummary& o) {
    if (!o.fit) return o.status.empty() ? "-" : o.status;
    std::string cell = io::format_sig(o.fit->alpha) + " +/- " + io::format_sig(kCiMultiplier * o.fit->se_alpha);
    if (o.test && o.test->reject_at_5pct) cell += " *";
    if (o.fit->degenerate_activity) cell += " (degenerate-activity)";
    return cell;
}

}  // namespace

ReportBundle run_pipeline(const AnalysisConfig& config, std::span<const std::filesystem::path> inputs) {
    validate(config);
    ReportBundle bundle;

    std::vector<int> orders = config.detrend_orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

    // Load sequentially; analysis is the expensive part.
    std::vector<Input> loaded;
    std::vector<std::string> failure(inputs.size());
    std::set<std::string> dirs;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        try {
            io::LoadedSeries s = io::load_series(inputs[i]);
            Input in;
            in.path = inputs[i];
            in.values = std::move(s.values);
            in.subject = std::move(s.meta.subject);
            if (s.meta.dt) {
                in.dt = *s.meta.dt;
            } else if (config.dt) {
                in.dt = *config.dt;
            } else {
                throw Error(ErrorCode::InvalidInput, "no sampling interval (sidecar dt or config dt)");
            }
            if (!(in.dt > 0.0) || !std::isfinite(in.dt)) {
                throw Error(ErrorCode::InvalidInput, "sampling interval must be positive");
            }
            in.binary = std::all_of(in.values.begin(), in.values.end(),
                                    [](double v) { return v == 0.0 || v == 1.0; });
            std::string dir = sanitize(in.subject.id);
            for (int k = 2; dirs.count(dir); ++k) dir = sanitize(in.subject.id) + "_" + std::to_string(k);
            dirs.insert(dir);
            in.dir = dir;
            in.input_index = i;
            loaded.push_back(std::move(in));
        } catch (const std::exception& e) {
            failure[i] = inputs[i].string() + ": " + e.what();
        }
    }

    std::map<NullKey, EmpiricalCi> null_bands;
    if (config.null_replicates >= 2) {
        for (const auto& in : loaded) {
            for (int m : orders) null_bands.emplace(NullKey{in.values.size(), m}, EmpiricalCi{});
        }
        for (auto& [key, band] : null_bands) {
            const std::uint64_t seed = derive_seed(derive_seed(config.seed, key.first),
                                                   static_cast<std::uint64_t>(key.second));
            try {
                band = empirical_ci(ArfimaParams{}, key.first, key.second, config.null_replicates, seed,
                                    config.scales(), config.workers);
            } catch (const Error&) {
                band.replicates = 0;  // series too short for this order; reported per order anyway
            }
        }
        std::erase_if(null_bands, [](const auto& kv) { return kv.second.replicates == 0; });
    }

    std::vector<std::optional<SeriesOutput>> outputs(loaded.size());
    std::vector<std::string> errors(loaded.size());
    detail::parallel_for(loaded.size(), config.workers, [&](std::size_t i) {
        try {
            outputs[i] = analyse(loaded[i], config, orders, null_bands);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        if (!outputs[i]) failure[loaded[i].input_index] = loaded[i].path.string() + ": " + errors[i];
    }
    for (const auto& f : failure) {
        if (!f.empty()) bundle.failures.push_back(f);
    }

    Json report;
    Json jcfg;
    for (const auto& [k, v] : config_entries(config)) jcfg[k] = v;
    report["config"] = std::move(jcfg);

    Json jseries = Json::array();
    std::vector<std::string> group_order;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        if (!outputs[i]) continue;
        jseries.push_back(outputs[i]->json);
        for (auto& [name, content] : outputs[i]->files) bundle.files[name] = std::move(content);
        const std::string g = group_key(loaded[i].subject);
        if (!groups.count(g)) group_order.push_back(g);
        groups[g].push_back(i);
    }
    report["series"] = std::move(jseries);

    Json jgroups = Json::array();
    std::ostringstream table;
    table << "# alpha +/- 1.96*se per series and detrending order; * rejects d = 0 at the 5% level\n";
    std::vector<std::string> header{"series", "group", "N"};
    for (int m : orders) header.push_back("DFA" + std::to_string(m));
    std::vector<std::vector<std::string>> rows{header};
    for (const auto& g : group_order) {
        for (std::size_t i : groups[g]) {
            std::vector<std::string> row{loaded[i].subject.id, g, std::to_string(loaded[i].values.size())};
            for (const auto& o : outputs[i]->orders) row.push_back(ci_cell(o));
            rows.push_back(std::move(row));
        }
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) line += c + 1 < r.size() ? pad(r[c], widths[c]) : r[c];
        table << line << '\n';
    }

    for (const auto& g : group_order) {
        Json jg;
        jg["group"] = g;
        jg["series"] = groups[g].size();
        table << "\n# group " << g << " (" << groups[g].size() << " series)\n";

        Json jalpha = Json::array();
        for (std::size_t k = 0; k < orders.size(); ++k) {
            std::vector<double> alphas;
            for (std::size_t i : groups[g]) {
                const auto& o = outputs[i]->orders[k];
                if (o.fit) alphas.push_back(o.fit->alpha);
            }
            const GroupSummary s = summarize(alphas);
            Json ja = to_json(s);
            ja["order"] = orders[k];
            jalpha.push_back(std::move(ja));
            table << "mean alpha DFA" << orders[k] << ": "
                  << (s.count ? io::format_sig(s.mean) + " +/- " + io::format_sig(s.se) + " (se, n=" +
                                    std::to_string(s.count) + ")"
                              : std::string("-"))
                  << '\n';
        }
        jg["alpha"] = std::move(jalpha);

        std::vector<EventRuns> pooled;
        for (std::size_t i : groups[g]) {
            if (outputs[i]->events) pooled.push_back(*outputs[i]->events);
        }
        const std::string gdir = "groups/" + sanitize(g) + "/";
        Json jev;
        for (State st : {State::Immobile, State::Mobile}) {
            Json js;
            std::vector<double> slopes;
            for (std::size_t i : groups[g]) {
                const auto& m = outputs[i]->power_law_slope;
                if (const auto it = m.find(st); it != m.end()) slopes.push_back(it->second);
            }
            const GroupSummary s = summarize(slopes);
            js["per_series_slope"] = to_json(s);
            table << "mean S (" << to_string(st) << "): "
                  << (s.count ? io::format_sig(s.mean) + " +/- " + io::format_sig(s.se) + " (se, n=" +
                                    std::to_string(s.count) + ")"
                              : std::string("-"));
            if (!pooled.empty()) {
                try {
                    const DurationHistogram h = duration_histogram(pooled, st, config.histogram());
                    bundle.files[gdir + "hist_" + to_string(st) + ".csv"] =
                        render([&](std::ostream& o) { io::write_histogram_csv(o, h); });
                    const auto cmp = classify_distribution(h, config.distribution_r2_margin);
                    js["pooled"] = to_json(cmp);
                    js["pooled_subjects"] = h.pooled_subjects;
                    js["events"] = h.events;
                    table << "; pooled S = " << io::format_sig(cmp.power_law.slope)
                          << " (r2 = " << io::format_sig(cmp.power_law.r2, 3) << "), "
                          << to_string(cmp.verdict);
                } catch (const Error& e) {
                    js["pooled"] = Json{{"error", e.what()}};
                }
            }
            table << '\n';
            jev[to_string(st)] = std::move(js);
        }
        jg["events"] = std::move(jev);
        jgroups.push_back(std::move(jg));
    }
    report["groups"] = std::move(jgroups);
    report["failures"] = bundle.failures;

    bundle.files["report.json"] = report.dump(2) + "\n";
    bundle.files["ci_table.txt"] = table.str();
    return bundle;
}

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir) {
    for (const auto& [name, content] : bundle.files) {
        const auto path = dir / name;
        std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
        out << content;
    }
}

}  // namespace lrdfa
