#ifndef PWL_JSON_IO_HPP
#define PWL_JSON_IO_HPP

#include <json.hpp>

#include "pwl/bcb.hpp"
#include "pwl/circlemap.hpp"
#include "pwl/cycles.hpp"
#include "pwl/pwlmap.hpp"
#include "pwl/tongues.hpp"

namespace pwl {

using nlohmann::json;

// Map document: {"n": int, "A_L": [[...]], "A_R": [[...]], "b": [...]},
// row-major; unknown keys are rejected, the shared-column invariant is
// validated on construction.
json map_to_json(const PWLMap& map);
PWLMap map_from_json(const json& j);

json cycle_to_json(const Cycle& cycle);
json fixed_points_to_json(const PWLMap& map);
json rotational_params_to_json(const RotationalParams& params);
json bcb_event_to_json(const BCBEvent& event, const AuditReport* audit);
json circle_model_to_json(const CircleModel& model);
json audit_campaign_to_json(const AuditCampaign& campaign);

// Family document, one of
//   {"family": "pws2d"|"nf2d", "params": {...}, "vary": "<param>"}
//   {"family": "pws2d"|"nf2d", "from": {...}, "to": {...}}
//   {"family": "interp", "map0": {...}, "map1": {...}}
Family family_from_json(const json& j);

// Scan document: {"family", "fixed": {}, "axes": [{"param","min","max",
// "count"}, ...], "p_max", "mode", "word", "exhaustive", "corners"}.
GridSpec gridspec_from_json(const json& j);
json gridspec_to_json(const GridSpec& spec);

json scan_summary_json(const ScanResult& scan);

}  // namespace pwl

#endif
