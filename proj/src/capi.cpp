#include "pwlmode.h"

#include <cstring>
#include <fstream>
#include <string>

#include "pwl/circlemap.hpp"
#include "pwl/error.hpp"
#include "pwl/json_io.hpp"
#include "pwl/tongues.hpp"
#include "pwl/tolerances.hpp"

using namespace pwl;

struct pwlmode_map {
  PWLMap map;
};

namespace {

thread_local std::string g_last_error;

int set_error(const Error& e) {
  g_last_error = std::string(error_code_name(e.code())) + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::Domain: return PWLMODE_ERR_DOMAIN;
    case ErrorKind::Numerical: return PWLMODE_ERR_NUMERIC;
    case ErrorKind::Internal: return PWLMODE_ERR_INTERNAL;
  }
  return PWLMODE_ERR_INTERNAL;
}

int set_error(const std::exception& e) {
  g_last_error = e.what();
  return PWLMODE_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return set_error(e);
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PWLMODE_ERR_DOMAIN;
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool cond, const char* msg) {
  if (cond) return PWLMODE_OK;
  g_last_error = msg;
  return PWLMODE_ERR_DOMAIN;
}

}  // namespace

extern "C" {

const char* pwlmode_version(void) { return "pwlmode 1.0.0"; }

const char* pwlmode_last_error(void) { return g_last_error.c_str(); }

void pwlmode_string_free(char* s) { delete[] s; }

int pwlmode_set_option(const char* name, double value) {
  return guarded([&]() {
    if (require(name != nullptr, "set_option: null name")) return PWLMODE_ERR_DOMAIN;
    std::string key(name);
    Tolerances& t = tolerances();
    if (value <= 0.0) {
      g_last_error = "set_option: value must be positive";
      return PWLMODE_ERR_DOMAIN;
    }
    if (key == "eps_sign")
      t.eps_sign = value;
    else if (key == "eps_lin")
      t.eps_lin = value;
    else if (key == "closure_factor")
      t.closure_factor = value;
    else if (key == "mode_lock_tol")
      t.mode_lock_tol = value;
    else {
      g_last_error = "set_option: unknown option '" + key + "'";
      return PWLMODE_ERR_DOMAIN;
    }
    return PWLMODE_OK;
  });
}

int pwlmode_map_family(const char* family, const double* params, size_t nparams,
                       pwlmode_map** out) {
  return guarded([&]() {
    if (require(family && out && (params || nparams == 0), "map_family: null argument"))
      return PWLMODE_ERR_DOMAIN;
    std::string id(family);
    PWLMap map = [&]() {
      if (id == "pws2d") {
        if (nparams != 2) throw_domain(ErrorCode::BadInput, "pws2d takes [alpha, beta]");
        return PWLMap::pws2d(params[0], params[1]);
      }
      if (id == "nf2d") {
        if (nparams != 4)
          throw_domain(ErrorCode::BadInput, "nf2d takes [tau_l, delta_l, tau_r, delta_r]");
        return PWLMap::normal_form_2d(params[0], params[1], params[2], params[3]);
      }
      throw_domain(ErrorCode::BadInput, "unknown family '" + id + "'");
    }();
    *out = new pwlmode_map{std::move(map)};
    return PWLMODE_OK;
  });
}

int pwlmode_map_from_json(const char* json_text, pwlmode_map** out) {
  return guarded([&]() {
    if (require(json_text && out, "map_from_json: null argument")) return PWLMODE_ERR_DOMAIN;
    json j = json::parse(json_text);
    *out = new pwlmode_map{map_from_json(j)};
    return PWLMODE_OK;
  });
}

void pwlmode_map_free(pwlmode_map* map) { delete map; }

int pwlmode_map_dim(const pwlmode_map* map) { return map ? map->map.dim() : 0; }

int pwlmode_map_to_json(const pwlmode_map* map, char** out_json) {
  return guarded([&]() {
    if (require(map && out_json, "map_to_json: null argument")) return PWLMODE_ERR_DOMAIN;
    *out_json = dup_string(map_to_json(map->map).dump());
    return PWLMODE_OK;
  });
}

int pwlmode_map_eval(const pwlmode_map* map, const double* x, double* y) {
  return guarded([&]() {
    if (require(map && x && y, "map_eval: null argument")) return PWLMODE_ERR_DOMAIN;
    Vec xin(x, x + map->map.dim());
    Vec yout = map->map.eval(xin);
    std::memcpy(y, yout.data(), sizeof(double) * yout.size());
    return PWLMODE_OK;
  });
}

int pwlmode_map_fixed_points(const pwlmode_map* map, char** out_json) {
  return guarded([&]() {
    if (require(map && out_json, "map_fixed_points: null argument"))
      return PWLMODE_ERR_DOMAIN;
    *out_json = dup_string(fixed_points_to_json(map->map).dump());
    return PWLMODE_OK;
  });
}

int pwlmode_map_is_homeomorphism(const pwlmode_map* map, int* out) {
  return guarded([&]() {
    if (require(map && out, "map_is_homeomorphism: null argument"))
      return PWLMODE_ERR_DOMAIN;
    switch (is_homeomorphism(map->map)) {
      case Tristate::True: *out = 1; break;
      case Tristate::False: *out = 0; break;
      case Tristate::Indeterminate: *out = -1; break;
    }
    return PWLMODE_OK;
  });
}

int pwlmode_mult_inverse(int m, int p, int* out_d) {
  return guarded([&]() {
    if (require(out_d != nullptr, "mult_inverse: null output")) return PWLMODE_ERR_DOMAIN;
    *out_d = mult_inverse(m, p);
    return PWLMODE_OK;
  });
}

int pwlmode_word_rotational(int ell, int m, int p, char** out_word) {
  return guarded([&]() {
    if (require(out_word != nullptr, "word_rotational: null output"))
      return PWLMODE_ERR_DOMAIN;
    *out_word = dup_string(Word::rotational(ell, m, p).str());
    return PWLMODE_OK;
  });
}

int pwlmode_word_classify(const char* word, char** out_json) {
  return guarded([&]() {
    if (require(word && out_json, "word_classify: null argument")) return PWLMODE_ERR_DOMAIN;
    auto params = classify_rotational(Word(word));
    json j;
    j["rotational"] = params.has_value();
    if (params) {
      json inner = rotational_params_to_json(*params);
      for (const auto& [key, value] : inner.items()) j[key] = value;
    }
    *out_json = dup_string(j.dump());
    return PWLMODE_OK;
  });
}

int pwlmode_cycle_solve(const pwlmode_map* map, const char* word, char** out_json) {
  return guarded([&]() {
    if (require(map && word && out_json, "cycle_solve: null argument"))
      return PWLMODE_ERR_DOMAIN;
    Word w = parse_word_spec(word);
    Cycle cycle = solve_cycle(map->map, w);
    json j = cycle_to_json(cycle);
    j["first_component_adjugate"] = first_component_adjugate(map->map, w);
    *out_json = dup_string(j.dump());
    return PWLMODE_OK;
  });
}

int pwlmode_cycle_first_component(const pwlmode_map* map, const char* word, double* out) {
  return guarded([&]() {
    if (require(map && word && out, "cycle_first_component: null argument"))
      return PWLMODE_ERR_DOMAIN;
    *out = first_component_adjugate(map->map, parse_word_spec(word));
    return PWLMODE_OK;
  });
}

int pwlmode_circle_analyze(const pwlmode_map* map, const char* config_json,
                           char** out_json) {
  return guarded([&]() {
    if (require(map && out_json, "circle_analyze: null argument"))
      return PWLMODE_ERR_DOMAIN;
    json cfg = config_json ? json::parse(config_json) : json::object();
    for (const auto& [key, value] : cfg.items()) {
      (void)value;
      static const char* allowed[] = {"x0",      "transient",           "keep",
                                      "center",  "rotation_iterations", "max_den",
                                      "p_max",   "mode",                "samples_csv"};
      bool ok = false;
      for (const char* a : allowed)
        if (key == a) ok = true;
      if (!ok) throw_domain(ErrorCode::BadInput, "circle config: unknown key '" + key + "'");
    }
    const std::string mode = cfg.value("mode", std::string("attractor"));
    const int rotation_iterations = cfg.value("rotation_iterations", 10000);
    const int max_den = cfg.value("max_den", 64);
    const int p_max = cfg.value("p_max", 64);

    json out;
    CircleModel model;
    OrbitSample orbit;
    bool have_orbit = false;
    if (mode == "unstable_manifold") {
      model = analyze_unstable_circle(map->map);
    } else if (mode == "attractor") {
      Vec x0{0.1, -0.1};
      if (cfg.contains("x0")) x0 = cfg["x0"].get<Vec>();
      const int transient = cfg.value("transient", 5000);
      const int keep = cfg.value("keep", 2000);
      orbit = sample_attractor(map->map, x0, transient, keep);
      have_orbit = true;
      Vec center;
      if (cfg.contains("center")) {
        center = cfg["center"].get<Vec>();
      } else {
        // pws2d-style default: the manifold point enclosed by the example
        // family's circles; otherwise the orbit centroid
        center = Vec{0.0, -0.5};
        bool looks_pws2d = map->map.dim() == 2 && map->map.offset()[0] == 1.0 &&
                           map->map.offset()[1] == 0.0 &&
                           map->map.left().at(0, 1) == 1.0;
        if (!looks_pws2d) {
          center = Vec{0.0, 0.0};
          for (const auto& pt : orbit.points) {
            center[0] += pt[0];
            center[1] += pt[1];
          }
          center[0] /= static_cast<double>(orbit.points.size());
          center[1] /= static_cast<double>(orbit.points.size());
        }
      }
      model = reconstruct_circle(orbit, center, rotation_iterations, max_den);
    } else {
      throw_domain(ErrorCode::BadInput, "circle config: unknown mode '" + mode + "'");
    }
    out = circle_model_to_json(model);
    out["mode"] = mode;

    if (have_orbit) {
      auto period = detect_period(orbit, p_max);
      if (period) {
        out["period"] = *period;
        std::vector<Vec> cycle_pts(orbit.points.end() - *period, orbit.points.end());
        try {
          Word itin = itinerary_from_circle(model, cycle_pts);
          out["itinerary"] = itin.str();
          auto cls = classify_rotational(itin);
          out["itinerary_rotational"] =
              cls ? rotational_params_to_json(*cls) : json(nullptr);
        } catch (const Error& e) {
          out["itinerary_error"] = e.what();
        }
        try {
          std::vector<double> ts;
          for (const auto& pt : cycle_pts) ts.push_back(model.param_of(pt));
          OrderedOrbit oo = ordering_check(ts, model.c);
          out["ordering"] = {{"s", oo.s}, {"m", oo.m}, {"d", oo.d}, {"holds", true}};
        } catch (const Error& e) {
          out["ordering"] = {{"holds", false}, {"error", e.what()}};
        }
      } else {
        out["period"] = nullptr;
      }
    }

    if (cfg.contains("samples_csv")) {
      std::ofstream csv(cfg["samples_csv"].get<std::string>());
      if (!csv) throw_domain(ErrorCode::BadInput, "circle config: cannot open samples_csv");
      csv << "t,g,x1,x2\n";
      for (const auto& s : model.samples)
        csv << json(s.t).dump() << ',' << json(s.g).dump() << ',' << json(s.x1).dump()
            << ',' << json(s.x2).dump() << '\n';
    }
    *out_json = dup_string(out.dump());
    return PWLMODE_OK;
  });
}

int pwlmode_scan_run(const char* spec_json, const char* csv_path, const char* summary_path,
                     int threads, char** out_summary_json) {
  return guarded([&]() {
    if (require(spec_json != nullptr, "scan_run: null spec")) return PWLMODE_ERR_DOMAIN;
    GridSpec spec = gridspec_from_json(json::parse(spec_json));
    ScanResult scan = scan_grid(spec, threads);
    if (csv_path) {
      std::ofstream csv(csv_path, std::ios::binary);
      if (!csv) throw_domain(ErrorCode::BadInput, "scan_run: cannot open csv path");
      csv << scan_csv(scan);
    }
    json summary = scan_summary_json(scan);
    summary["config"]["threads"] = threads;
    if (summary_path) {
      std::ofstream out(summary_path, std::ios::binary);
      if (!out) throw_domain(ErrorCode::BadInput, "scan_run: cannot open summary path");
      out << summary.dump(2) << '\n';
    }
    if (out_summary_json) *out_summary_json = dup_string(summary.dump());
    return PWLMODE_OK;
  });
}

int pwlmode_bcb_run(const char* family_json, const char* word, int flip_index,
                    double eta_lo, double eta_hi, char** out_event_json) {
  return guarded([&]() {
    if (require(family_json && word && out_event_json, "bcb_run: null argument"))
      return PWLMODE_ERR_DOMAIN;
    Family family = family_from_json(json::parse(family_json));
    Word w = parse_word_spec(word);
    double lo = eta_lo, hi = eta_hi;
    if (flip_index < 0) {
      BoundaryRefinement ref = refine_boundary(family, w, eta_lo, eta_hi);
      if (ref.has_exit && ref.k_exit >= 0) {
        flip_index = ref.k_exit;
        lo = ref.exit_lo;
        hi = ref.exit_hi;
      } else if (ref.has_enter && ref.k_enter >= 0) {
        flip_index = ref.k_enter;
        lo = ref.enter_lo;
        hi = ref.enter_hi;
      } else {
        throw_domain(ErrorCode::NoSignChange,
                     "bcb_run: no admissibility-loss edge inside the bracket");
      }
    }
    BCBEvent event = locate_bcb(family, w, flip_index, lo, hi);
    classify_bcb(event, family);
    AuditReport audit = rotational_bcb_audit(event);
    *out_event_json = dup_string(bcb_event_to_json(event, &audit).dump());
    return PWLMODE_OK;
  });
}

int pwlmode_audit_run(int target_events, unsigned long long seed, char** out_json) {
  return guarded([&]() {
    if (require(out_json != nullptr, "audit_run: null output")) return PWLMODE_ERR_DOMAIN;
    AuditCampaign campaign = run_rotational_audit_campaign(target_events, seed);
    *out_json = dup_string(audit_campaign_to_json(campaign).dump());
    return PWLMODE_OK;
  });
}

}  // extern "C"
