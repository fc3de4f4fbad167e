#ifndef PWL_FAMILIES_HPP
#define PWL_FAMILIES_HPP

#include <functional>
#include <map>
#include <string>

#include "pwl/pwlmap.hpp"

namespace pwl {

// One-parameter family of maps; the closure must be pure (callable from any
// thread).
struct Family {
  std::function<PWLMap(double)> at;
  std::string description;
};

// Builtin families: "pws2d" (alpha, beta) and "nf2d" (tau_l, delta_l, tau_r,
// delta_r).  Throws on unknown family or missing parameters.
PWLMap build_family_map(const std::string& family,
                        const std::map<std::string, double>& params);

const std::vector<std::string>& family_param_names(const std::string& family);

// eta is the value of the named parameter; all others fixed.
Family make_param_family(const std::string& family,
                         const std::map<std::string, double>& fixed,
                         const std::string& vary);

// eta in [0,1] interpolates all parameters linearly between two settings.
Family make_path_family(const std::string& family,
                        const std::map<std::string, double>& from,
                        const std::map<std::string, double>& to);

// eta in [0,1] interpolates two arbitrary maps entrywise (shared-column
// structure is preserved by linearity).
Family make_interp_family(const PWLMap& map0, const PWLMap& map1);

}  // namespace pwl

#endif
