#pragma once

#include "json.hpp"
#include "lrdfa/dfa.hpp"
#include "lrdfa/events.hpp"
#include "lrdfa/spectrum.hpp"

namespace lrdfa {

using Json = nlohmann::ordered_json;

/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
[[nodiscard]] Json json_number(double v);

[[nodiscard]] Json to_json(const ScalingFit& f);
[[nodiscard]] Json to_json(const LongMemoryTest& t);
[[nodiscard]] Json to_json(const CrossoverReport& c);
[[nodiscard]] Json to_json(const DistributionFit& f);
[[nodiscard]] Json to_json(const DistributionComparison& c);
[[nodiscard]] Json to_json(const GroupSummary& s);
[[nodiscard]] Json to_json(const PeriodicityVerdict& v);

}  // namespace lrdfa
