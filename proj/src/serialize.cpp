#include "lrdfa/serialize.hpp"

#include <cmath>

namespace lrdfa {

Json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

Json to_json(const ScalingFit& f) {
    return Json{{"alpha", json_number(f.alpha)},
                {"log_phi", json_number(f.log_phi)},
                {"se_alpha", json_number(f.se_alpha)},
                {"ci95", Json::array({json_number(f.ci_lower), json_number(f.ci_upper)})},
                {"r2", json_number(f.r2)},
                {"range", Json::array({json_number(f.range.n_min), json_number(f.range.n_max)})},
                {"n_points", f.n_points},
                {"zero_points", f.zero_points},
                {"degenerate_activity", f.degenerate_activity}};
}

Json to_json(const LongMemoryTest& t) {
    return Json{{"d_hat", json_number(t.d_hat)},
                {"z", json_number(t.z)},
                {"p_value", json_number(t.p_value)},
                {"reject_at_5pct", t.reject_at_5pct}};
}

Json to_json(const CrossoverReport& c) {
    return Json{{"has_crossover", c.has_crossover},
                {"break_log10_n", json_number(c.break_log10_n)},
                {"alpha1", json_number(c.alpha1)},
                {"alpha2", json_number(c.alpha2)},
                {"r2_1", json_number(c.r2_1)},
                {"r2_2", json_number(c.r2_2)},
                {"delta_bic", json_number(c.delta_bic)},
                {"n_points", c.n_points}};
}

Json to_json(const DistributionFit& f) {
    return Json{{"family", to_string(f.family)},
                {"slope", json_number(f.slope)},
                {"intercept", json_number(f.intercept)},
                {"r2", json_number(f.r2)},
                {"bins", f.bins},
                {"winner", f.winner}};
}

Json to_json(const DistributionComparison& c) {
    return Json{{"classification", to_string(c.verdict)},
                {"power_law", to_json(c.power_law)},
                {"exponential", to_json(c.exponential)}};
}

Json to_json(const GroupSummary& s) {
    return Json{{"mean", json_number(s.mean)}, {"se", json_number(s.se)}, {"count", s.count}};
}

Json to_json(const PeriodicityVerdict& v) {
    return Json{{"periodic", v.periodic},
                {"frequency", json_number(v.frequency)},
                {"period_samples", json_number(v.period_samples)},
                {"ratio", json_number(v.ratio)}};
}

}  // namespace lrdfa
