#include "pwl/json_io.hpp"

#include <cmath>

#include "pwl/error.hpp"
#include "pwl/tolerances.hpp"

namespace pwl {

namespace {

void ensure_keys(const json& j, std::initializer_list<const char*> allowed,
                 const char* what) {
  if (!j.is_object()) throw_domain(ErrorCode::BadInput, std::string(what) + ": expected object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw_domain(ErrorCode::BadInput,
                   std::string(what) + ": unknown key '" + key + "'");
  }
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw_domain(ErrorCode::BadInput, std::string(what) + ": expected " + std::to_string(n) + " rows");
  Mat m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw_domain(ErrorCode::BadInput, std::string(what) + ": bad row length");
    for (int c = 0; c < n; ++c) {
      if (!row[static_cast<size_t>(c)].is_number())
        throw_domain(ErrorCode::BadInput, std::string(what) + ": non-numeric entry");
      m.at(i, c) = row[static_cast<size_t>(c)].get<double>();
    }
  }
  return m;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

std::map<std::string, double> params_from_json(const json& j, const char* what) {
  if (!j.is_object()) throw_domain(ErrorCode::BadInput, std::string(what) + ": expected object");
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number())
      throw_domain(ErrorCode::BadInput, std::string(what) + ": parameter '" + key + "' not numeric");
    out[key] = value.get<double>();
  }
  return out;
}

}  // namespace

json map_to_json(const PWLMap& map) {
  json j;
  j["n"] = map.dim();
  j["A_L"] = mat_to_json(map.left());
  j["A_R"] = mat_to_json(map.right());
  j["b"] = vec_to_json(map.offset());
  return j;
}

PWLMap map_from_json(const json& j) {
  ensure_keys(j, {"n", "A_L", "A_R", "b"}, "map");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw_domain(ErrorCode::BadInput, "map: missing integer 'n'");
  const int n = j["n"].get<int>();
  if (n < 1 || n > 12) throw_domain(ErrorCode::BadInput, "map: n out of range [1, 12]");
  if (!j.contains("A_L") || !j.contains("A_R") || !j.contains("b"))
    throw_domain(ErrorCode::BadInput, "map: needs A_L, A_R and b");
  Mat al = mat_from_json(j["A_L"], n, "map A_L");
  Mat ar = mat_from_json(j["A_R"], n, "map A_R");
  const json& jb = j["b"];
  if (!jb.is_array() || static_cast<int>(jb.size()) != n)
    throw_domain(ErrorCode::BadInput, "map: b must have n entries");
  Vec b(n);
  for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)] = jb[static_cast<size_t>(i)].get<double>();
  return PWLMap(al, ar, b);
}

json cycle_to_json(const Cycle& cycle) {
  json j;
  j["word"] = cycle.word.str();
  json pts = json::array();
  for (const auto& pt : cycle.points) pts.push_back(vec_to_json(pt));
  j["points"] = std::move(pts);
  j["admissibility"] = admissibility_name(cycle.admissibility);
  j["multipliers_moduli"] = cycle.multipliers;
  j["stable"] = cycle.stable;
  j["marginal"] = cycle.marginal;
  j["det_I_minus_M"] = cycle.mats.det_i_minus_m;
  j["det_P"] = cycle.mats.det_p;
  j["closure_residual"] = cycle.closure_residual;
  return j;
}

namespace {

json fixed_point_to_json(const FixedPointReport& rep) {
  json j;
  j["exists"] = rep.exists;
  j["det_I_minus_A"] = rep.det_i_minus_a;
  j["multipliers_moduli"] = rep.multipliers;
  j["stable"] = rep.stable;
  if (rep.exists) {
    j["point"] = vec_to_json(rep.point);
    j["first_component"] = rep.first_component;
    j["admissibility"] = admissibility_name(rep.admissibility);
  } else {
    j["point"] = nullptr;
    j["first_component"] = nullptr;
    j["admissibility"] = nullptr;
  }
  return j;
}

}  // namespace

json fixed_points_to_json(const PWLMap& map) {
  auto [fl, fr] = fixed_points(map);
  json j;
  j["L"] = fixed_point_to_json(fl);
  j["R"] = fixed_point_to_json(fr);
  RhoVector rho = rho_vector(map);
  j["rho"] = vec_to_json(rho.rho);
  j["rho_b"] = rho.rho_b;
  return j;
}

json rotational_params_to_json(const RotationalParams& params) {
  json j;
  j["ell"] = params.ell;
  j["m"] = params.m;
  j["p"] = params.p;
  j["shift"] = params.shift;
  j["d"] = params.d;
  return j;
}

json bcb_event_to_json(const BCBEvent& event, const AuditReport* audit) {
  json j;
  j["eta_star"] = event.eta_star;
  j["word"] = event.word.str();
  j["flip_index"] = event.flip_index;
  j["flipped_word"] = event.word.flipped(event.flip_index).str();
  j["genericity"] = {{"det_I_minus_M_X", event.genericity.det_i_minus_m_x},
                     {"det_I_minus_M_Xk", event.genericity.det_i_minus_m_xk},
                     {"rho_b", event.genericity.rho_b}};
  if (event.classified) {
    j["classification"] = bcb_class_name(event.classification);
    j["method_agreement"] = event.method_agreement;
    if (!event.degenerate_reason.empty()) j["degenerate_reason"] = event.degenerate_reason;
    if (event.det_sign_vote) j["det_sign_vote"] = bcb_class_name(*event.det_sign_vote);
    if (event.side_vote) j["side_vote"] = bcb_class_name(*event.side_vote);
    j["side_eps"] = event.side_eps;
    if (event.below.valid) {
      j["sides"] = {{"below",
                     {{"X", admissibility_name(event.below.x)},
                      {"Xk", admissibility_name(event.below.xk)}}},
                    {"above",
                     {{"X", admissibility_name(event.above.x)},
                      {"Xk", admissibility_name(event.above.xk)}}}};
    }
  }
  if (audit) {
    json a;
    a["status"] = audit_status_name(audit->status);
    a["detail"] = audit->detail;
    if (audit->rotational) a["rotational"] = rotational_params_to_json(*audit->rotational);
    if (audit->j) a["j"] = *audit->j;
    j["audit"] = std::move(a);
  }
  return j;
}

json circle_model_to_json(const CircleModel& model) {
  json j;
  j["center"] = vec_to_json(model.center);
  j["samples"] = model.samples.size();
  j["degree"] = model.degree;
  j["monotone"] = model.monotone;
  j["aligned"] = model.aligned;
  j["boundary_crossings"] = model.boundary_crossings;
  if (std::isfinite(model.c))
    j["c"] = model.c;
  else
    j["c"] = nullptr;
  if (model.degree == 1) {
    j["lift_offset"] = model.lift_offset;
    if (model.rotation.iterations > 0) {
      j["rotation"] = {{"value", model.rotation.value},
                       {"num", model.rotation.num},
                       {"den", model.rotation.den},
                       {"error_bound", model.rotation.error_bound},
                       {"iterations", model.rotation.iterations}};
    }
  }
  return j;
}

json audit_campaign_to_json(const AuditCampaign& campaign) {
  json j;
  j["requested"] = campaign.requested;
  j["events"] = campaign.events;
  j["nonsmooth_folds"] = campaign.nonsmooth_folds;
  j["persistence"] = campaign.persistence;
  j["degenerate"] = campaign.degenerate;
  j["theorem_violations"] = campaign.theorem_violations;
  j["families_tried"] = campaign.families_tried;
  return j;
}

Family family_from_json(const json& j) {
  if (!j.is_object()) throw_domain(ErrorCode::BadInput, "family: expected object");
  if (!j.contains("family") || !j["family"].is_string())
    throw_domain(ErrorCode::BadInput, "family: missing 'family' id");
  const std::string id = j["family"].get<std::string>();
  if (id == "interp") {
    ensure_keys(j, {"family", "map0", "map1"}, "family");
    if (!j.contains("map0") || !j.contains("map1"))
      throw_domain(ErrorCode::BadInput, "interp family needs map0 and map1");
    return make_interp_family(map_from_json(j["map0"]), map_from_json(j["map1"]));
  }
  if (j.contains("vary")) {
    ensure_keys(j, {"family", "params", "vary"}, "family");
    auto params = j.contains("params") ? params_from_json(j["params"], "family params")
                                       : std::map<std::string, double>{};
    return make_param_family(id, params, j["vary"].get<std::string>());
  }
  ensure_keys(j, {"family", "from", "to"}, "family");
  if (!j.contains("from") || !j.contains("to"))
    throw_domain(ErrorCode::BadInput, "family: needs either 'vary' or 'from'/'to'");
  return make_path_family(id, params_from_json(j["from"], "family from"),
                          params_from_json(j["to"], "family to"));
}

GridSpec gridspec_from_json(const json& j) {
  ensure_keys(j, {"family", "fixed", "axes", "p_max", "mode", "word", "exhaustive", "corners"},
              "scan spec");
  GridSpec spec;
  if (!j.contains("family") || !j["family"].is_string())
    throw_domain(ErrorCode::BadInput, "scan spec: missing 'family'");
  spec.family = j["family"].get<std::string>();
  if (j.contains("fixed")) spec.fixed = params_from_json(j["fixed"], "scan fixed");
  if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].size() != 2)
    throw_domain(ErrorCode::BadInput, "scan spec: needs exactly 2 axes");
  Axis* axes[2] = {&spec.ax1, &spec.ax2};
  for (int a = 0; a < 2; ++a) {
    const json& ja = j["axes"][static_cast<size_t>(a)];
    ensure_keys(ja, {"param", "min", "max", "count"}, "scan axis");
    axes[a]->param = ja.at("param").get<std::string>();
    axes[a]->lo = ja.at("min").get<double>();
    axes[a]->hi = ja.at("max").get<double>();
    axes[a]->count = ja.at("count").get<int>();
    if (!(axes[a]->count >= 2) || !std::isfinite(axes[a]->lo) || !std::isfinite(axes[a]->hi))
      throw_domain(ErrorCode::BadInput, "scan axis: count >= 2 and finite range required");
  }
  if (j.contains("p_max")) spec.p_max = j["p_max"].get<int>();
  if (j.contains("mode")) {
    const std::string mode = j["mode"].get<std::string>();
    if (mode == "full")
      spec.mode = ScanMode::Full;
    else if (mode == "single_word")
      spec.mode = ScanMode::SingleWord;
    else
      throw_domain(ErrorCode::BadInput, "scan spec: mode must be 'full' or 'single_word'");
  }
  if (j.contains("word")) spec.word = parse_word_spec(j["word"].get<std::string>());
  if (j.contains("exhaustive")) spec.exhaustive = j["exhaustive"].get<bool>();
  if (j.contains("corners")) {
    for (const auto& jc : j["corners"]) spec.corners.push_back(map_from_json(jc));
    if (spec.corners.size() != 4)
      throw_domain(ErrorCode::BadInput, "scan spec: corners must hold 4 maps");
  }
  return spec;
}

json gridspec_to_json(const GridSpec& spec) {
  json j;
  j["family"] = spec.family;
  j["fixed"] = json::object();
  for (const auto& [key, value] : spec.fixed) j["fixed"][key] = value;
  j["axes"] = json::array();
  for (const Axis* ax : {&spec.ax1, &spec.ax2})
    j["axes"].push_back(
        {{"param", ax->param}, {"min", ax->lo}, {"max", ax->hi}, {"count", ax->count}});
  j["p_max"] = spec.p_max;
  j["mode"] = spec.mode == ScanMode::Full ? "full" : "single_word";
  if (spec.word) j["word"] = spec.word->str();
  j["exhaustive"] = spec.exhaustive;
  if (!spec.corners.empty()) {
    j["corners"] = json::array();
    for (const auto& c : spec.corners) j["corners"].push_back(map_to_json(c));
  }
  return j;
}

json scan_summary_json(const ScanResult& scan) {
  json j;
  j["config"] = gridspec_to_json(scan.spec);
  j["config"]["eps_sign"] = eps_sign();
  j["config"]["eps_lin"] = eps_lin();
  int counts[4] = {0, 0, 0, 0};
  int coexisting = 0;
  for (const auto& cell : scan.cells) {
    ++counts[static_cast<int>(cell.kind)];
    coexisting += cell.coexisting;
  }
  j["cells"] = {{"total", scan.cells.size()},
                {"fixed_point", counts[0]},
                {"mode_locked", counts[1]},
                {"none", counts[2]},
                {"skipped", counts[3]}};
  if (scan.spec.exhaustive) j["cells"]["coexisting_extra"] = coexisting;
  j["seconds"] = scan.seconds;
  json tongues = json::array();
  for (const auto& t : summarize_tongues(scan)) {
    json jt;
    jt["m"] = t.m;
    jt["p"] = t.p;
    jt["cells"] = t.cells;
    json ells = json::object();
    for (const auto& [ell, n] : t.ell_counts) ells[std::to_string(ell)] = n;
    jt["ell_counts"] = std::move(ells);
    json pinches = json::array();
    for (const auto& [x, y] : t.pinch_candidates) pinches.push_back({x, y});
    jt["pinch_candidates"] = std::move(pinches);
    tongues.push_back(std::move(jt));
  }
  j["tongues"] = std::move(tongues);
  return j;
}

}  // namespace pwl
