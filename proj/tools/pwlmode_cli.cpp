// Command-line front end for the pwlmode shared library.  Only the C API in
// pwlmode.h is used; flag parsing and config assembly are local concerns.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pwlmode.h"

using nlohmann::json;

namespace {

struct ParamFlag {
  std::string name;         // family parameter name
  std::string raw;          // scalar or lo:hi:count
  bool set = false;
};

int fail(int code) {
  std::cerr << "error: " << pwlmode_last_error() << "\n";
  return code;
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  pwlmode_string_free(s);
  return out;
}

// "lo:hi:count" -> axis spec; plain scalars parse as a single value
struct Range {
  double lo = 0, hi = 0;
  int count = 0;
  bool is_range = false;
  double scalar = 0;
};

bool parse_range(const std::string& raw, Range& out) {
  const size_t c1 = raw.find(':');
  if (c1 == std::string::npos) {
    try {
      out.scalar = std::stod(raw);
    } catch (const std::exception&) {
      return false;
    }
    out.is_range = false;
    return true;
  }
  const size_t c2 = raw.find(':', c1 + 1);
  if (c2 == std::string::npos) return false;
  try {
    out.lo = std::stod(raw.substr(0, c1));
    out.hi = std::stod(raw.substr(c1 + 1, c2 - c1 - 1));
    out.count = std::stoi(raw.substr(c2 + 1));
  } catch (const std::exception&) {
    return false;
  }
  out.is_range = true;
  return true;
}

// "key=value,key=value" used by the bcb --from/--to path endpoints
bool parse_kv(const std::string& raw, std::map<std::string, double>& out) {
  size_t pos = 0;
  while (pos < raw.size()) {
    size_t comma = raw.find(',', pos);
    if (comma == std::string::npos) comma = raw.size();
    const std::string item = raw.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string::npos) return false;
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      return false;
    }
    pos = comma + 1;
  }
  return !out.empty();
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) return true;
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text << '\n';
  return true;
}

// Builds a map handle from --family + parameter flags or --map FILE.
int make_map(const std::string& family, const std::string& map_file,
             const std::vector<ParamFlag>& params, pwlmode_map** out) {
  if (!map_file.empty()) {
    auto text = read_file(map_file);
    if (!text) {
      std::cerr << "error: cannot read map file '" << map_file << "'\n";
      return PWLMODE_ERR_DOMAIN;
    }
    return pwlmode_map_from_json(text->c_str(), out);
  }
  std::vector<double> values;
  for (const auto& p : params) {
    if (!p.set) {
      std::cerr << "error: family '" << family << "' needs --" << p.name << "\n";
      return PWLMODE_ERR_DOMAIN;
    }
    Range r;
    if (!parse_range(p.raw, r) || r.is_range) {
      std::cerr << "error: --" << p.name << " must be a scalar here\n";
      return PWLMODE_ERR_DOMAIN;
    }
    values.push_back(r.scalar);
  }
  return pwlmode_map_family(family.c_str(), values.data(), values.size(), out);
}

const std::vector<std::string>& family_params(const std::string& family) {
  static const std::vector<std::string> pws2d = {"alpha", "beta"};
  static const std::vector<std::string> nf2d = {"tau_l", "delta_l", "tau_r", "delta_r"};
  static const std::vector<std::string> none = {};
  if (family == "pws2d") return pws2d;
  if (family == "nf2d") return nf2d;
  return none;
}

void print_tolerance_help() {
  std::cout << "tolerances: eps_sign=1e-9 (sign decisions), eps_lin=1e-12 (residuals),\n"
               "            closure_factor=1e4, mode_lock_tol=1e-7\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pwlmode: periodic solutions, border-collision bifurcations and "
               "Arnold-tongue scans of two-piece piecewise-linear maps"};
  app.set_version_flag("--version", std::string(pwlmode_version()));

  double eps_sign = 0, eps_lin = 0;
  app.add_option("--eps-sign", eps_sign, "override the sign-decision tolerance (1e-9)");
  app.add_option("--eps-lin", eps_lin, "override the residual tolerance (1e-12)");

  // shared flag storage
  std::string family = "pws2d", map_file, word, out_json_path;
  std::map<std::string, std::string> raw_params;  // all family parameter flags

  auto add_family_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family,-f", family, "builtin family: pws2d | nf2d")
        ->default_val("pws2d");
    cmd->add_option("--map", map_file, "JSON map file instead of a builtin family");
    for (const char* name : {"alpha", "beta", "tl", "dl", "tr", "dr"})
      cmd->add_option(std::string("--") + name, raw_params[name]);
  };

  auto collect_params = [&](bool ranges_allowed) {
    // CLI short names map onto the family parameter names
    static const std::map<std::string, std::string> alias = {
        {"alpha", "alpha"}, {"beta", "beta"},   {"tl", "tau_l"},
        {"dl", "delta_l"},  {"tr", "tau_r"},    {"dr", "delta_r"}};
    std::vector<ParamFlag> out;
    for (const auto& name : family_params(family)) {
      ParamFlag flag;
      flag.name = name;
      for (const auto& [flag_name, param_name] : alias) {
        if (param_name == name && !raw_params[flag_name].empty()) {
          flag.raw = raw_params[flag_name];
          flag.set = true;
        }
      }
      (void)ranges_allowed;
      out.push_back(flag);
    }
    return out;
  };

  // ---- cycle ----
  auto* cmd_cycle = app.add_subcommand("cycle", "solve an X-cycle and report it");
  add_family_flags(cmd_cycle);
  cmd_cycle->add_option("--word,-w", word, "word: literal LRR... or F[ell,m,p]")->required();
  cmd_cycle->add_option("--json", out_json_path, "write the full report to a JSON file");

  // ---- scan ----
  auto* cmd_scan = app.add_subcommand("scan", "two-parameter mode-locking sweep");
  add_family_flags(cmd_scan);
  int pmax = 20, threads = 0;
  bool exhaustive = false;
  std::string csv_path, summary_path, mode = "full";
  cmd_scan->add_option("--pmax", pmax, "largest period to test (<= 64)");
  cmd_scan->add_option("--threads", threads, "worker threads (0 = hardware)");
  cmd_scan->add_option("--csv", csv_path, "cell CSV output path");
  cmd_scan->add_option("--summary", summary_path, "tongue summary JSON output path");
  cmd_scan->add_option("--mode", mode, "full | single-word");
  cmd_scan->add_option("--word,-w", word, "word for single-word mode");
  cmd_scan->add_flag("--exhaustive", exhaustive, "count coexisting stable cycles");

  // ---- bcb ----
  auto* cmd_bcb = app.add_subcommand("bcb", "locate and classify a border collision");
  add_family_flags(cmd_bcb);
  std::string vary, from_kv, to_kv, map_b_file, bracket;
  int flip_index = 0;
  cmd_bcb->add_option("--vary", vary, "family parameter used as eta");
  cmd_bcb->add_option("--from", from_kv, "path start key=val,... (eta = 0)");
  cmd_bcb->add_option("--to", to_kv, "path end key=val,... (eta = 1)");
  cmd_bcb->add_option("--map-b", map_b_file, "second JSON map: interpolating family");
  cmd_bcb->add_option("--word,-w", word)->required();
  cmd_bcb->add_option("--flip-index,-k", flip_index, "orbit point that collides")->required();
  cmd_bcb->add_option("--bracket", bracket, "eta bracket lo:hi")->required();
  cmd_bcb->add_option("--json", out_json_path, "write the event JSON to a file");

  // ---- circle ----
  auto* cmd_circle = app.add_subcommand("circle", "attractor / invariant-circle analysis");
  add_family_flags(cmd_circle);
  std::string x0_raw, center_raw, samples_csv;
  int transient = 5000, keep = 2000, rotation_iters = 10000;
  bool unstable = false;
  cmd_circle->add_option("--x0", x0_raw, "initial point a,b (default 0.1,-0.1)");
  cmd_circle->add_option("--transient", transient);
  cmd_circle->add_option("--keep", keep);
  cmd_circle->add_option("--center", center_raw, "parametrization center x,y (default auto)");
  cmd_circle->add_option("--rotation-iters", rotation_iters);
  cmd_circle->add_option("--pmax", pmax, "mode-locking detection period bound");
  cmd_circle->add_option("--csv", samples_csv, "write (t, g(t), x1) samples to CSV");
  cmd_circle->add_flag("--unstable-manifold", unstable,
                       "trace an unstable invariant circle instead of iterating");
  cmd_circle->add_option("--json", out_json_path);

  // ---- audit ----
  auto* cmd_audit = app.add_subcommand("audit", "randomized nonsmooth-fold audit campaign");
  int audit_count = 200;
  unsigned long long seed = 1;
  cmd_audit->add_option("--count", audit_count, "number of audited events");
  cmd_audit->add_option("--seed", seed, "deterministic campaign seed");
  cmd_audit->add_option("--json", out_json_path);

  auto* cmd_tol = app.add_subcommand("tolerances", "print the tolerance defaults");
  (void)cmd_tol;

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : PWLMODE_ERR_DOMAIN;
  }

  if (eps_sign > 0 && pwlmode_set_option("eps_sign", eps_sign)) return fail(2);
  if (eps_lin > 0 && pwlmode_set_option("eps_lin", eps_lin)) return fail(2);

  if (cmd_tol->parsed()) {
    print_tolerance_help();
    return 0;
  }

  if (cmd_cycle->parsed()) {
    pwlmode_map* map = nullptr;
    if (int rc = make_map(family, map_file, collect_params(false), &map)) return fail(rc);
    char* out = nullptr;
    int rc = pwlmode_cycle_solve(map, word.c_str(), &out);
    pwlmode_map_free(map);
    if (rc) return fail(rc);
    json j = json::parse(take_string(out));
    std::cout << "word:            " << j["word"].get<std::string>() << "\n";
    std::cout << "admissibility:   " << j["admissibility"].get<std::string>() << "\n";
    std::cout << "stable:          " << (j["stable"].get<bool>() ? "yes" : "no")
              << (j["marginal"].get<bool>() ? " (marginal)" : "") << "\n";
    std::cout << "moduli:         ";
    for (const auto& m : j["multipliers_moduli"]) std::cout << " " << m.get<double>();
    std::cout << "\n";
    std::cout << "det(I-M):        " << j["det_I_minus_M"].get<double>() << "\n";
    std::cout << "det(P):          " << j["det_P"].get<double>() << "\n";
    const double direct = j["points"][0][0].get<double>();
    const double via_adj = j["first_component_adjugate"].get<double>();
    std::cout << "x1 direct:       " << direct << "\n";
    std::cout << "x1 adjugate:     " << via_adj << "\n";
    std::cout << "x1 difference:   " << direct - via_adj << "\n";
    std::cout << "points:\n";
    for (const auto& pt : j["points"]) {
      std::cout << " ";
      for (const auto& c : pt) std::cout << " " << c.get<double>();
      std::cout << "\n";
    }
    if (!out_json_path.empty() && !write_output(out_json_path, j.dump(2))) return 2;
    return 0;
  }

  if (cmd_scan->parsed()) {
    json spec;
    json fixed = json::object();
    json axes = json::array();
    if (!map_file.empty()) {
      std::cerr << "error: scan works on builtin families (see json_interp in the C API)\n";
      return 2;
    }
    for (const auto& p : collect_params(true)) {
      if (!p.set) {
        std::cerr << "error: scan needs --" << p.name << " (scalar or lo:hi:count)\n";
        return 2;
      }
      Range r;
      if (!parse_range(p.raw, r)) {
        std::cerr << "error: cannot parse --" << p.name << "\n";
        return 2;
      }
      if (r.is_range)
        axes.push_back({{"param", p.name}, {"min", r.lo}, {"max", r.hi}, {"count", r.count}});
      else
        fixed[p.name] = r.scalar;
    }
    if (axes.size() != 2) {
      std::cerr << "error: scan needs exactly two ranged parameters (lo:hi:count)\n";
      return 2;
    }
    spec["family"] = family;
    spec["fixed"] = fixed;
    spec["axes"] = axes;
    spec["p_max"] = pmax;
    if (mode == "single-word" || mode == "single_word") {
      spec["mode"] = "single_word";
      if (word.empty()) {
        std::cerr << "error: single-word mode needs --word\n";
        return 2;
      }
      spec["word"] = word;
    } else {
      spec["mode"] = "full";
    }
    spec["exhaustive"] = exhaustive;
    char* out = nullptr;
    int rc = pwlmode_scan_run(spec.dump().c_str(), csv_path.empty() ? nullptr : csv_path.c_str(),
                              summary_path.empty() ? nullptr : summary_path.c_str(), threads,
                              &out);
    if (rc) return fail(rc);
    json summary = json::parse(take_string(out));
    std::cout << "cells: " << summary["cells"].dump() << "\n";
    std::cout << "tongues detected: " << summary["tongues"].size() << "\n";
    std::cout << "seconds: " << summary["seconds"].get<double>() << "\n";
    return 0;
  }

  if (cmd_bcb->parsed()) {
    Range br;
    if (!parse_range(bracket, br) || !br.is_range) {
      // bracket uses lo:hi, count optional
      size_t colon = bracket.find(':');
      if (colon == std::string::npos) {
        std::cerr << "error: --bracket must be lo:hi\n";
        return 2;
      }
      try {
        br.lo = std::stod(bracket.substr(0, colon));
        br.hi = std::stod(bracket.substr(colon + 1));
      } catch (const std::exception&) {
        std::cerr << "error: --bracket must be lo:hi\n";
        return 2;
      }
    }
    json fam_spec;
    if (!map_file.empty() && !map_b_file.empty()) {
      auto a = read_file(map_file);
      auto b = read_file(map_b_file);
      if (!a || !b) {
        std::cerr << "error: cannot read interpolation endpoint maps\n";
        return 2;
      }
      fam_spec = {{"family", "interp"},
                  {"map0", json::parse(*a)},
                  {"map1", json::parse(*b)}};
    } else if (!from_kv.empty() || !to_kv.empty()) {
      std::map<std::string, double> from, to;
      if (!parse_kv(from_kv, from) || !parse_kv(to_kv, to)) {
        std::cerr << "error: --from/--to must be key=val,key=val\n";
        return 2;
      }
      fam_spec["family"] = family;
      fam_spec["from"] = from;
      fam_spec["to"] = to;
    } else {
      if (vary.empty()) {
        std::cerr << "error: bcb needs --vary PARAM (or --from/--to, or --map/--map-b)\n";
        return 2;
      }
      json params = json::object();
      for (const auto& p : collect_params(false))
        if (p.set) {
          Range r;
          if (!parse_range(p.raw, r) || r.is_range) {
            std::cerr << "error: --" << p.name << " must be a scalar\n";
            return 2;
          }
          params[p.name] = r.scalar;
        }
      fam_spec["family"] = family;
      fam_spec["params"] = params;
      fam_spec["vary"] = vary;
    }
    char* out = nullptr;
    int rc = pwlmode_bcb_run(fam_spec.dump().c_str(), word.c_str(), flip_index, br.lo, br.hi,
                             &out);
    if (rc) return fail(rc);
    json ev = json::parse(take_string(out));
    std::cout << "eta*:            " << ev["eta_star"].get<double>() << "\n";
    std::cout << "classification:  " << ev["classification"].get<std::string>() << "\n";
    std::cout << "audit:           " << ev["audit"]["status"].get<std::string>() << " ("
              << ev["audit"]["detail"].get<std::string>() << ")\n";
    if (!out_json_path.empty() && !write_output(out_json_path, ev.dump(2))) return 2;
    if (ev.contains("degenerate_reason") &&
        ev["degenerate_reason"].get<std::string>() == "method_disagreement")
      return 4;
    return 0;
  }

  if (cmd_circle->parsed()) {
    pwlmode_map* map = nullptr;
    if (int rc = make_map(family, map_file, collect_params(false), &map)) return fail(rc);
    json cfg;
    if (unstable) {
      cfg["mode"] = "unstable_manifold";
    } else {
      cfg["mode"] = "attractor";
      cfg["transient"] = transient;
      cfg["keep"] = keep;
      cfg["rotation_iterations"] = rotation_iters;
      cfg["p_max"] = pmax;
      auto parse_pair = [](const std::string& raw, json& out) {
        const size_t comma = raw.find(',');
        if (comma == std::string::npos) return false;
        try {
          out = json::array({std::stod(raw.substr(0, comma)), std::stod(raw.substr(comma + 1))});
        } catch (const std::exception&) {
          return false;
        }
        return true;
      };
      if (!x0_raw.empty()) {
        json v;
        if (!parse_pair(x0_raw, v)) {
          std::cerr << "error: --x0 must be a,b\n";
          return 2;
        }
        cfg["x0"] = v;
      }
      if (!center_raw.empty() && center_raw != "auto") {
        json v;
        if (!parse_pair(center_raw, v)) {
          std::cerr << "error: --center must be x,y\n";
          return 2;
        }
        cfg["center"] = v;
      }
    }
    if (!samples_csv.empty()) cfg["samples_csv"] = samples_csv;
    char* out = nullptr;
    int rc = pwlmode_circle_analyze(map, cfg.dump().c_str(), &out);
    pwlmode_map_free(map);
    if (rc) return fail(rc);
    json j = json::parse(take_string(out));
    std::cout << "degree:          " << j["degree"].dump() << "\n";
    std::cout << "crossings:       " << j["boundary_crossings"].dump() << "\n";
    if (j.contains("rotation") && !j["rotation"].is_null())
      std::cout << "rotation:        " << j["rotation"]["value"].get<double>() << " ~ "
                << j["rotation"]["num"].get<long>() << "/" << j["rotation"]["den"].get<long>()
                << "\n";
    if (j.contains("period") && !j["period"].is_null())
      std::cout << "period:          " << j["period"].get<int>() << "\n";
    if (j.contains("itinerary")) {
      std::cout << "itinerary:       " << j["itinerary"].get<std::string>() << "\n";
      std::cout << "rotational:      "
                << (j["itinerary_rotational"].is_null() ? "no"
                                                        : j["itinerary_rotational"].dump())
                << "\n";
    }
    if (!out_json_path.empty() && !write_output(out_json_path, j.dump(2))) return 2;
    return 0;
  }

  if (cmd_audit->parsed()) {
    char* out = nullptr;
    int rc = pwlmode_audit_run(audit_count, seed, &out);
    if (rc) return fail(rc);
    json j = json::parse(take_string(out));
    std::cout << j.dump(2) << "\n";
    if (!out_json_path.empty() && !write_output(out_json_path, j.dump(2))) return 2;
    const bool clean = j["theorem_violations"].get<int>() == 0 &&
                       j["persistence"].get<int>() == 0;
    return clean ? 0 : 4;
  }

  return 0;
}
