#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qctame/clustering.hpp"
#include "qctame/covering.hpp"
#include "qctame/map_spec.hpp"
#include "qctame/modulus.hpp"
#include "qctame/set_spec.hpp"
#include "qctame/verdict.hpp"

namespace qctame {

using Json = nlohmann::ordered_json;

/// {"kind", "params", "period", "infinite_punctures"}; unknown keys are rejected.
Json to_json(const SetSpec& set);
SetSpec set_spec_from_json(const Json& j);

/// {"kind", "params"}.
Json to_json(const MapSpec& map);
MapSpec map_spec_from_json(const Json& j);

Json to_json(const Window& window);
Window window_from_json(const Json& j);

Json to_json(const ClusterWitness& witness);
Json to_json(const TheoremBScan& scan);
Json to_json(const GrowthReport& report);
Json to_json(const Verdict& verdict);

Json to_json(const CondenserProblem& problem);
CondenserProblem condenser_problem_from_json(const Json& j);
Json to_json(const CertifiedEstimate& estimate);

/// window_shape,center_re,center_im,extent,ratio_lo,ratio_hi
std::string growth_report_csv(const GrowthReport& report);
/// {"max_ratio_lo", "verdict_hint", "witness_family"}
Json growth_summary_json(const GrowthReport& report);
/// index,height,best_count
std::string scan_trace_csv(const std::vector<StripTrace>& trace);
/// h,value,residual,iterations,extrapolated
std::string modulus_results_csv(const CertifiedEstimate& estimate);

/// Schedule file: CSV with header shape,center_re,center_im,extent.
std::vector<Window> parse_schedule_csv(const std::string& text, const std::string& source = "schedule");

/// Canonical text of a JSON document (two-space indent, trailing newline).
std::string dump(const Json& j);

}  // namespace qctame
