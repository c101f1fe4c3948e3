// Acceptance checks. Prints one PASS/FAIL line per criterion (plus indented detail lines)
// and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lrdfa/core.hpp"
#include "lrdfa/dfa.hpp"
#include "lrdfa/events.hpp"
#include "lrdfa/io.hpp"
#include "lrdfa/pipeline.hpp"
#include "lrdfa/spectrum.hpp"
#include "lrdfa/surrogate.hpp"
#include "oracle.hpp"

using namespace lrdfa;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
    std::printf("criterion %2d %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename... Args>
void detail(const char* fmt, Args... args) {
    std::printf("    ");
    std::printf(fmt, args...);
    std::printf("\n");
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 g(20240601);
    std::uniform_int_distribution<std::size_t> len(16, 64);
    std::uniform_int_distribution<int> order(1, 3);
    std::bernoulli_distribution bit(0.5);
    double worst = 0.0;
    std::size_t compared = 0;
    for (int s = 0; s < 50; ++s) {
        const std::size_t N = len(g);
        const int m = order(g);
        std::vector<double> x(N);
        for (auto& v : x) v = bit(g) ? 1.0 : 0.0;
        std::vector<std::size_t> scales;
        for (std::size_t n = static_cast<std::size_t>(m) + 2; n <= N; ++n) scales.push_back(n);
        const auto curve = fluctuation_function(profile(x), m, scales);
        for (const auto& pt : curve.points) {
            const double ref = oracle::fluctuation(x, m, pt.n);
            const double scale = std::max(std::abs(ref), std::abs(pt.F));
            // Both sides at rounding level count as an exact zero.
            const double rel = scale < 1e-12 ? 0.0 : std::abs(pt.F - ref) / scale;
            worst = std::max(worst, rel);
            ++compared;
        }
    }
    const double elapsed = seconds_since(t0);
    detail("%zu (series, n) pairs, worst relative difference %.3g, %.2f s", compared, worst, elapsed);
    verdict(1, worst <= 1e-10 && elapsed < 10.0, "fluctuation function matches brute-force oracle to 1e-10 in < 10 s");
}

void null_calibration() {
    const std::size_t reps = 200;
    std::vector<double> alphas;
    std::size_t rejected = 0;
    double se_sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto x = gen_arfima({0.0}, 32400, derive_seed(2, r));
        const auto fit = run_dfa(x, 1).fit;
        alphas.push_back(fit.alpha);
        se_sum += fit.se_alpha;
        rejected += test_long_memory(fit).reject_at_5pct;
    }
    const double mean = mean_of(alphas);
    const double rate = static_cast<double>(rejected) / static_cast<double>(reps);
    detail("mean alpha %.4f, rejection fraction %.3f", mean, rate);
    detail("mean regression se %.4f vs replicate sd of alpha %.4f", se_sum / reps, sd_of(alphas));
    verdict(2, mean >= 0.48 && mean <= 0.52 && rate >= 0.01 && rate <= 0.10,
            "white noise DFA1: mean alpha in [0.48, 0.52], d = 0 rejection fraction in [0.01, 0.10]");
}

void long_memory_recovery() {
    const std::size_t N = 32400;
    const auto band = empirical_ci({0.0}, N, 3, 200, 3);
    detail("d = 0 band for DFA3: [%.4f, %.4f]", band.q025, band.q975);
    bool ok = true;
    const double ds[] = {0.1, 0.2, 0.3};
    for (std::size_t k = 0; k < 3; ++k) {
        const double d = ds[k];
        std::vector<double> alphas;
        for (std::size_t r = 0; r < 100; ++r) {
            const auto x = gen_arfima({d}, N, derive_seed(derive_seed(30, k), r));
            alphas.push_back(run_dfa(x, 3).fit.alpha);
        }
        const double mean = mean_of(alphas);
        const bool near = std::abs(mean - (d + 0.5)) <= 0.03;
        const bool outside = !band.contains(mean);
        detail("d = %.1f: mean alpha %.4f (target %.1f), outside null band: %s", d, mean, d + 0.5,
               outside ? "yes" : "no");
        ok = ok && near && outside;
    }
    verdict(3, ok, "DFA3 mean alpha within d + 0.5 +/- 0.03 and outside the d = 0 empirical band");
}

void trend_elimination() {
    const std::vector<int> orders{1, 2, 3, 4};
    std::size_t good = 0;
    std::size_t dfa1 = 0;
    std::size_t dfa3_clean = 0;
    for (std::size_t r = 0; r < 100; ++r) {
        auto x = gen_arfima({0.3}, 32400, derive_seed(4, r));
        x = add_trend(x, {TrendSpec::Kind::Polynomial, 20.0, 2.0, 2.0});
        const auto sweep = detrending_sweep(x, orders);
        const bool c1 = sweep.orders[0].crossover.has_crossover;
        const bool c3 = !sweep.orders[2].crossover.has_crossover;
        dfa1 += c1;
        dfa3_clean += c3;
        good += c1 && c3 && sweep.classification == SweepClass::Artificial &&
                sweep.recommended_order.has_value() && *sweep.recommended_order <= 3;
    }
    detail("DFA1 crossover %zu/100, DFA3 crossover-free %zu/100, all conditions %zu/100", dfa1, dfa3_clean, good);
    verdict(4, good >= 95, "quadratic trend: crossover at DFA1, none at DFA3, artificial, order <= 3 in >= 95/100");
}

void persistent_crossover() {
    const std::vector<int> orders{1, 2, 3, 4};
    const std::size_t reps = 20;
    std::size_t good = 0;
    std::size_t all_orders = 0;
    std::size_t periodic = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        auto x = gen_arfima({0.0}, 32400, derive_seed(5, r));
        x = add_trend(x, {TrendSpec::Kind::Sinusoidal, std::sqrt(10.0), 1.0, 1000.0});
        const auto sweep = detrending_sweep(x, orders);
        bool every = true;
        double lo = INFINITY;
        double hi = -INFINITY;
        for (const auto& o : sweep.orders) {
            every = every && o.crossover.has_crossover;
            lo = std::min(lo, o.crossover.break_log10_n);
            hi = std::max(hi, o.crossover.break_log10_n);
        }
        const bool flagged = detect_periodicity(periodogram(x)).periodic;
        all_orders += every;
        periodic += flagged;
        const bool ok = every && hi - lo <= kPersistentSpread && std::abs(0.5 * (lo + hi) - 3.0) <= 0.5 && flagged;
        good += ok;
        if (r < 3) {
            detail("replicate %zu breaks %.2f %.2f %.2f %.2f, spread %.2f, periodic %s", r,
                   sweep.orders[0].crossover.break_log10_n, sweep.orders[1].crossover.break_log10_n,
                   sweep.orders[2].crossover.break_log10_n, sweep.orders[3].crossover.break_log10_n,
                   hi - lo, flagged ? "yes" : "no");
        }
    }
    detail("crossover at every order %zu/%zu, periodicity flagged %zu/%zu, all conditions %zu/%zu",
           all_orders, reps, periodic, reps, good, reps);
    verdict(5, good == reps, "sinusoid T = 1000: crossover near log10 n = 3 at orders 1-4, spread <= 0.3, periodic");
}

void crossover_precision() {
    std::mt19937_64 g(6);
    std::normal_distribution<double> noise(0.0, 0.02);
    std::size_t good = 0;
    for (int t = 0; t < 100; ++t) {
        FluctuationCurve c;
        std::size_t last = 0;
        for (double x = 0.9; x <= 4.3 + 1e-9; x += 1.0 / 15.0) {
            const auto n = static_cast<std::size_t>(std::llround(std::pow(10.0, x)));
            if (n <= last) continue;
            last = n;
            const double lx = std::log10(static_cast<double>(n));
            const double ly = (lx <= 2.8 ? 1.0 : 0.4) * (lx - 2.8) + noise(g);
            c.points.push_back({n, std::pow(10.0, ly)});
        }
        const auto r = detect_crossover(c);
        good += r.has_crossover && std::abs(r.break_log10_n - 2.8) <= 0.15 &&
                std::abs(r.alpha1 - 1.0) <= 0.05 && std::abs(r.alpha2 - 0.4) <= 0.05;
    }
    detail("%zu/100 trials within tolerance", good);
    verdict(6, good >= 90, "two-slope curves: break +/- 0.15, slopes +/- 0.05 in >= 90/100");
}

void event_distributions() {
    std::vector<double> cdf;
    double z = 0.0;
    for (int k = 1; k <= 1000000; ++k) {
        z += std::pow(static_cast<double>(k), -2.0);
        cdf.push_back(z);
    }
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(0.0, z);
    std::vector<Event> power;
    for (int i = 0; i < 10000; ++i) {
        const auto k = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u(g)) - cdf.begin()) + 1;
        power.push_back({State::Immobile, 0, k, static_cast<double>(k)});
    }
    // Exponential durations, mean 10 samples, recorded in whole sampling steps.
    std::exponential_distribution<double> e(0.1);
    std::vector<Event> expo;
    for (int i = 0; i < 10000; ++i) {
        const auto k = static_cast<std::size_t>(std::ceil(e(g)));
        expo.push_back({State::Immobile, 0, k, static_cast<double>(k)});
    }

    HistogramOptions log_bins;
    log_bins.binning = Binning::Logarithmic;
    const auto pc = classify_distribution(duration_histogram(power, State::Immobile, log_bins));
    const auto ec = classify_distribution(duration_histogram(expo, State::Immobile, log_bins));
    detail("log bins: power-law S %.3f (r2 %.3f vs %.3f) -> %s; exponential sample -> %s",
           pc.power_law.slope, pc.power_law.r2, pc.exponential.r2, to_string(pc.verdict).c_str(),
           to_string(ec.verdict).c_str());
    const auto pe = classify_distribution(duration_histogram(power, State::Immobile));
    const auto ee = classify_distribution(duration_histogram(expo, State::Immobile));
    detail("exact bins (for reference): power-law S %.3f -> %s; exponential sample -> %s",
           pe.power_law.slope, to_string(pe.verdict).c_str(), to_string(ee.verdict).c_str());
    verdict(7, std::abs(pc.power_law.slope + 2.0) <= 0.15 && pc.verdict == DistributionClass::PowerLaw &&
                   ec.verdict == DistributionClass::Exponential,
            "power law -2: S within +/- 0.15 and power_law; exponential sample classified exponential");
}

void duration_stability() {
    const std::size_t N = 32400;
    const auto x = gen_arfima({0.3}, N, 8);
    const std::vector<double> durations{0.25 * N, 0.5 * N, 0.75 * N, 1.0 * N};
    const auto table = duration_sweep(x, 1.0, durations, 3);
    double worst = 0.0;
    bool complete = true;
    const double full = table.back().fit ? table.back().fit->alpha : NAN;
    for (const auto& row : table) {
        if (!row.fit) {
            complete = false;
            continue;
        }
        detail("length %zu: alpha %.4f", row.length, row.fit->alpha);
        worst = std::max(worst, std::abs(row.fit->alpha - full));
    }
    detail("max deviation from the full-length estimate %.4f", worst);
    verdict(8, complete && worst <= 0.05, "stationary surrogate prefixes 1/4..1: max alpha deviation <= 0.05");
}

void determinism() {
    const auto dir = fs::temp_directory_path() / "lrdfa_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::vector<fs::path> inputs;
    for (int i = 0; i < 4; ++i) {
        const auto x = gen_arfima({0.25}, 10000, derive_seed(9, i));
        const auto bits = binarize_at_median(x);
        const auto file = dir / ("s" + std::to_string(i) + ".csv");
        io::write_series_csv(file, std::vector<double>(bits.begin(), bits.end()));
        io::write_meta(io::meta_path(file), 0.5, {"s" + std::to_string(i), i % 2 ? "quail" : "mosquito", "ctl"});
        inputs.push_back(file);
    }
    AnalysisConfig c;
    c.null_replicates = 10;
    c.workers = 2;
    const auto a = run_pipeline(c, inputs);
    const auto b = run_pipeline(c, inputs);
    detail("%zu files per bundle", a.files.size());
    verdict(9, a.files == b.files && a.failures == b.failures && !a.files.empty(),
            "two identical pipeline runs give byte-identical bundles");
    fs::remove_all(dir);
}

void ci_width() {
    double widest = 0.0;
    for (std::size_t r = 0; r < 20; ++r) {
        const auto x = gen_arfima({0.3}, 86400, derive_seed(10, r));
        const auto fit = run_dfa(x, 3).fit;
        widest = std::max(widest, 0.5 * (fit.ci_upper - fit.ci_lower));
    }
    detail("widest half-width over 20 surrogates %.4f", widest);
    verdict(10, widest < 0.03, "d = 0.3, N = 86400, DFA3: CI half-widths below 0.03");
}

}  // namespace

int main() {
    oracle_equivalence();
    null_calibration();
    long_memory_recovery();
    trend_elimination();
    persistent_crossover();
    crossover_precision();
    event_distributions();
    duration_stability();
    determinism();
    ci_width();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
