#include "pwl/bcb.hpp"

#include <cmath>

#include "pwl/error.hpp"
#include "pwl/tolerances.hpp"

namespace pwl {

const char* bcb_class_name(BCBClass c) {
  switch (c) {
    case BCBClass::Persistence: return "persistence";
    case BCBClass::NonsmoothFold: return "nonsmooth_fold";
    case BCBClass::Degenerate: return "degenerate";
  }
  return "unknown";
}

const char* audit_status_name(AuditStatus s) {
  switch (s) {
    case AuditStatus::Pass: return "pass";
    case AuditStatus::NotApplicable: return "not_applicable";
    case AuditStatus::TheoremViolation: return "theorem_violation";
  }
  return "unknown";
}

namespace {

struct PointProbe {
  double y_k_1 = 0.0;
  double det_i_minus_m = 0.0;
};

// First component of the k-th cycle point plus the uniqueness determinant.
PointProbe probe(const Family& family, const Word& word, int k, double eta) {
  PWLMap map = family.at(eta);
  Cycle cyc = solve_cycle(map, word);
  PointProbe p;
  p.y_k_1 = cyc.points[static_cast<size_t>(k)][0];
  p.det_i_minus_m = cyc.mats.det_i_minus_m;
  return p;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

BCBEvent locate_bcb(const Family& family, const Word& word, int k, double eta_lo,
                    double eta_hi) {
  if (eta_hi <= eta_lo)
    throw_domain(ErrorCode::BadInput, "locate_bcb: empty bracket");
  const int p = word.length();
  k = ((k % p) + p) % p;

  PointProbe lo, hi;
  try {
    lo = probe(family, word, k, eta_lo);
    hi = probe(family, word, k, eta_hi);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoUniqueCycle)
      throw_domain(ErrorCode::LostUniqueness,
                   "locate_bcb: det(I - M) vanishes at a bracket endpoint");
    throw;
  }
  const int det_sign = sign_of(lo.det_i_minus_m);
  if (det_sign == 0 || sign_of(hi.det_i_minus_m) != det_sign)
    throw_domain(ErrorCode::LostUniqueness,
                 "locate_bcb: det(I - M) changes sign across the bracket");
  if (sign_of(lo.y_k_1) * sign_of(hi.y_k_1) >= 0)
    throw_domain(ErrorCode::NoSignChange,
                 "locate_bcb: k-th point's first component does not change sign");

  BCBEvent event(word);
  event.flip_index = k;
  event.bracket_width = eta_hi - eta_lo;

  double a = eta_lo, b = eta_hi;
  double fa = lo.y_k_1;
  const double eta_res = 1e-12 * std::max({1.0, std::fabs(eta_lo), std::fabs(eta_hi)});
  while (b - a > eta_res) {
    double mid = 0.5 * (a + b);
    PointProbe pm;
    try {
      pm = probe(family, word, k, mid);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoUniqueCycle)
        throw_domain(ErrorCode::LostUniqueness,
                     "locate_bcb: det(I - M) vanishes inside the bracket");
      throw;
    }
    if (sign_of(pm.det_i_minus_m) != det_sign)
      throw_domain(ErrorCode::LostUniqueness,
                   "locate_bcb: det(I - M) changes sign inside the bracket");
    if (sign_of(pm.y_k_1) == sign_of(fa)) {
      a = mid;
      fa = pm.y_k_1;
    } else {
      b = mid;
    }
  }
  event.eta_star = 0.5 * (a + b);

  PWLMap at_star = family.at(event.eta_star);
  WordMatrices wm_x = word_matrices(at_star, word);
  WordMatrices wm_xk = word_matrices(at_star, word.flipped(k));
  event.genericity.det_i_minus_m_x = wm_x.det_i_minus_m;
  event.genericity.det_i_minus_m_xk = wm_xk.det_i_minus_m;
  event.genericity.rho_b = rho_vector(at_star).rho_b;
  return event;
}

std::pair<BCBClass, bool> combine_classification_votes(BCBClass det_vote,
                                                       std::optional<BCBClass> side_vote) {
  if (!side_vote.has_value()) return {BCBClass::Degenerate, false};
  if (*side_vote == det_vote) return {det_vote, true};
  return {BCBClass::Degenerate, false};
}

void classify_bcb(BCBEvent& event, const Family& family) {
  event.classified = true;
  const Genericity& g = event.genericity;
  if (std::fabs(g.det_i_minus_m_x) <= eps_sign() ||
      std::fabs(g.det_i_minus_m_xk) <= eps_sign() || std::fabs(g.rho_b) <= eps_sign()) {
    event.classification = BCBClass::Degenerate;
    event.degenerate_reason = "genericity quantity within eps_sign of zero";
    event.method_agreement = false;
    return;
  }

  // determinant-sign method; det(I - M) is shift-invariant, so comparing the
  // unshifted words equals the flipped-symbol-at-index-0 formulation
  event.det_sign_vote = (sign_of(g.det_i_minus_m_x) == sign_of(g.det_i_minus_m_xk))
                            ? BCBClass::Persistence
                            : BCBClass::NonsmoothFold;

  // admissibility cross-check at eta* +- eps, eps doubling on Boundary hits
  const Word flipped = event.word.flipped(event.flip_index);
  double eps = std::max(1e-8, 1e-4 * event.bracket_width);
  event.side_vote.reset();
  for (int attempt = 0; attempt <= 3; ++attempt, eps *= 2.0) {
    SideSample below, above;
    try {
      PWLMap mb = family.at(event.eta_star - eps);
      PWLMap ma = family.at(event.eta_star + eps);
      below.x = solve_cycle(mb, event.word).admissibility;
      below.xk = solve_cycle(mb, flipped).admissibility;
      above.x = solve_cycle(ma, event.word).admissibility;
      above.xk = solve_cycle(ma, flipped).admissibility;
      below.valid = above.valid = true;
    } catch (const Error&) {
      continue;  // uniqueness lost that close to the event: widen
    }
    event.side_eps = eps;
    event.below = below;
    event.above = above;
    if (below.x == Admissibility::Boundary || below.xk == Admissibility::Boundary ||
        above.x == Admissibility::Boundary || above.xk == Admissibility::Boundary)
      continue;
    const bool x_below = below.x == Admissibility::Admissible;
    const bool x_above = above.x == Admissibility::Admissible;
    const bool xk_below = below.xk == Admissibility::Admissible;
    const bool xk_above = above.xk == Admissibility::Admissible;
    if (x_below == x_above || xk_below == xk_above) {
      // a cycle admissible on both sides (or neither) is not a generic
      // boundary crossing; widening does not fix that
      break;
    }
    event.side_vote = (x_below == xk_below) ? BCBClass::NonsmoothFold : BCBClass::Persistence;
    break;
  }

  auto [cls, agree] = combine_classification_votes(*event.det_sign_vote, event.side_vote);
  event.classification = cls;
  event.method_agreement = agree;
  if (!agree) {
    event.degenerate_reason = event.side_vote.has_value()
                                  ? "method_disagreement"
                                  : "side sampling inconclusive";
  }
}

namespace {

// splitmix64; the campaign must reproduce bit-identically for a given seed
struct Rng {
  unsigned long long state;
  explicit Rng(unsigned long long seed) : state(seed) {}
  unsigned long long next() {
    unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }

}  // namespace

AuditCampaign run_rotational_audit_campaign(int target_events, unsigned long long seed,
                                            int p_max) {
  if (target_events < 1 || p_max < 4 || p_max > 16)
    throw_domain(ErrorCode::BadInput, "audit campaign: need target >= 1 and 4 <= p_max <= 16");
  AuditCampaign result;
  result.requested = target_events;
  Rng rng(seed);
  CycleWorkspace ws;

  const int max_families = 400000;
  while (result.events < target_events && result.families_tried < max_families) {
    ++result.families_tried;
    // random word F[ell,m,p] with 2 <= ell <= p-2
    const int p = rng.integer(4, p_max);
    int m = rng.integer(1, p - 1);
    while (gcd_int(m, p) != 1) m = rng.integer(1, p - 1);
    const int ell = rng.integer(2, p - 2);
    Word word = Word::rotational(ell, m, p);

    // random 2-d family, linear in eta, shared second column
    double base[8], dir[8];
    for (int i = 0; i < 8; ++i) {
      base[i] = rng.uniform(-1.5, 1.5);
      dir[i] = rng.uniform(-1.0, 1.0);
    }
    Family fam;
    fam.description = "audit family";
    fam.at = [base, dir](double eta) {
      auto v = [&](int i) { return base[i] + eta * dir[i]; };
      Mat al(2, {v(0), v(4), v(1), v(5)});
      Mat ar(2, {v(2), v(4), v(3), v(5)});
      return PWLMap(al, ar, Vec{v(6), v(7)});
    };

    // margin scan over eta; collect the interior ends of admissible runs
    const int samples = 200;
    const double lo = -1.0, hi = 1.0;
    const double step = (hi - lo) / (samples - 1);
    double margins[samples];
    for (int i = 0; i < samples; ++i) {
      CycleVerdict v = cycle_verdict(fam.at(lo + i * step), word, ws);
      margins[i] = v.unique ? v.min_margin : -1e300;
    }
    for (int i = 0; i + 1 < samples && result.events < target_events; ++i) {
      const bool adm_a = margins[i] > 0.0;
      const bool adm_b = margins[i + 1] > 0.0;
      if (adm_a == adm_b) continue;
      const double eta_adm = lo + (adm_a ? i : i + 1) * step;
      const double eta_out = lo + (adm_a ? i + 1 : i) * step;
      // crossing point: the index whose first component changes sign
      int k = -1;
      try {
        Cycle ca = solve_cycle(fam.at(eta_adm), word);
        Cycle cb = solve_cycle(fam.at(eta_out), word);
        int flips = 0;
        for (int q = 0; q < p; ++q) {
          if ((ca.points[static_cast<size_t>(q)][0] < 0) !=
              (cb.points[static_cast<size_t>(q)][0] < 0)) {
            ++flips;
            k = q;
          }
        }
        if (flips != 1) continue;  // multiple points moved: step too coarse here
      } catch (const Error&) {
        continue;
      }
      const int j = static_cast<int>((static_cast<long long>(k) * m) % p);
      if (!(j == 0 || j == ell - 1 || j == ell || j == p - 1)) continue;

      try {
        BCBEvent ev = locate_bcb(fam, word, k, std::min(eta_adm, eta_out),
                                 std::max(eta_adm, eta_out));
        const Genericity& g = ev.genericity;
        if (std::fabs(g.det_i_minus_m_x) < 1e-6 || std::fabs(g.det_i_minus_m_xk) < 1e-6 ||
            std::fabs(g.rho_b) < 1e-6)
          continue;  // genericity not satisfied: outside the campaign's scope
        classify_bcb(ev, fam);
        AuditReport audit = rotational_bcb_audit(ev);
        ++result.events;
        switch (ev.classification) {
          case BCBClass::NonsmoothFold: ++result.nonsmooth_folds; break;
          case BCBClass::Persistence: ++result.persistence; break;
          case BCBClass::Degenerate: ++result.degenerate; break;
        }
        if (audit.status == AuditStatus::TheoremViolation) ++result.theorem_violations;
      } catch (const Error&) {
        continue;  // lost uniqueness or similar: not a usable event
      }
    }
  }
  return result;
}

AuditReport rotational_bcb_audit(const BCBEvent& event) {
  AuditReport report;
  if (!event.classified) {
    report.detail = "event not classified";
    return report;
  }
  auto params = classify_rotational(event.word);
  if (!params.has_value()) {
    report.detail = "word not rotational";
    return report;
  }
  report.rotational = params;
  if (params->ell < 2 || params->ell > params->p - 2) {
    report.detail = "ell outside [2, p-2]";
    return report;
  }
  // flip position within the canonical rotational word, expressed in d-steps
  const int p = params->p;
  const int k_canonical = (event.flip_index + params->shift) % p;
  const int j = static_cast<int>((static_cast<long long>(k_canonical) * params->m) % p);
  report.j = j;
  const bool in_j_set =
      (j == 0 || j == params->ell - 1 || j == params->ell || j == p - 1);
  if (!in_j_set) {
    report.detail = "flip index outside the j-set";
    return report;
  }
  if (event.classification == BCBClass::Degenerate) {
    report.detail = "degenerate event";
    return report;
  }
  if (event.classification == BCBClass::NonsmoothFold) {
    report.status = AuditStatus::Pass;
    report.detail = "nonsmooth fold as required";
  } else {
    report.status = AuditStatus::TheoremViolation;
    report.detail = "persistence classification for a j-set rotational flip";
  }
  return report;
}

}  // namespace pwl
