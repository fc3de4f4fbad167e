#include "pwl/families.hpp"

#include <vector>

#include "pwl/error.hpp"

namespace pwl {

namespace {

double need(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw_domain(ErrorCode::BadInput, "family: missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

const std::vector<std::string>& family_param_names(const std::string& family) {
  static const std::vector<std::string> pws2d = {"alpha", "beta"};
  static const std::vector<std::string> nf2d = {"tau_l", "delta_l", "tau_r", "delta_r"};
  if (family == "pws2d") return pws2d;
  if (family == "nf2d") return nf2d;
  throw_domain(ErrorCode::BadInput, "unknown family '" + family + "'");
}

PWLMap build_family_map(const std::string& family,
                        const std::map<std::string, double>& params) {
  if (family == "pws2d")
    return PWLMap::pws2d(need(params, "alpha"), need(params, "beta"));
  if (family == "nf2d")
    return PWLMap::normal_form_2d(need(params, "tau_l"), need(params, "delta_l"),
                                  need(params, "tau_r"), need(params, "delta_r"));
  throw_domain(ErrorCode::BadInput, "unknown family '" + family + "'");
}

Family make_param_family(const std::string& family,
                         const std::map<std::string, double>& fixed,
                         const std::string& vary) {
  bool known = false;
  for (const auto& name : family_param_names(family))
    if (name == vary) known = true;
  if (!known)
    throw_domain(ErrorCode::BadInput, "family: cannot vary unknown parameter '" + vary + "'");
  Family f;
  f.description = family + " vary " + vary;
  f.at = [family, fixed, vary](double eta) {
    auto params = fixed;
    params[vary] = eta;
    return build_family_map(family, params);
  };
  return f;
}

Family make_path_family(const std::string& family,
                        const std::map<std::string, double>& from,
                        const std::map<std::string, double>& to) {
  for (const auto& name : family_param_names(family)) {
    if (from.find(name) == from.end() || to.find(name) == to.end())
      throw_domain(ErrorCode::BadInput, "path family: endpoints must fix '" + name + "'");
  }
  Family f;
  f.description = family + " path";
  f.at = [family, from, to](double eta) {
    std::map<std::string, double> params;
    for (const auto& [key, a] : from) params[key] = a + eta * (to.at(key) - a);
    return build_family_map(family, params);
  };
  return f;
}

Family make_interp_family(const PWLMap& map0, const PWLMap& map1) {
  if (map0.dim() != map1.dim())
    throw_domain(ErrorCode::BadInput, "interp family: dimension mismatch");
  Family f;
  f.description = "interp";
  f.at = [map0, map1](double eta) {
    const int n = map0.dim();
    Mat al(n), ar(n);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        al.at(i, j) = (1.0 - eta) * map0.left().at(i, j) + eta * map1.left().at(i, j);
        ar.at(i, j) = (1.0 - eta) * map0.right().at(i, j) + eta * map1.right().at(i, j);
      }
      b[i] = (1.0 - eta) * map0.offset()[i] + eta * map1.offset()[i];
    }
    return PWLMap(al, ar, b);
  };
  return f;
}

}  // namespace pwl
