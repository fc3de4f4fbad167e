#ifndef PWL_BCB_HPP
#define PWL_BCB_HPP

#include <optional>
#include <string>

#include "pwl/cycles.hpp"
#include "pwl/families.hpp"
#include "pwl/words.hpp"

namespace pwl {

enum class BCBClass { Persistence, NonsmoothFold, Degenerate };
const char* bcb_class_name(BCBClass c);

// Quantities whose non-vanishing makes the bifurcation generic.
struct Genericity {
  double det_i_minus_m_x = 0.0;
  double det_i_minus_m_xk = 0.0;
  double rho_b = 0.0;
};

struct SideSample {
  Admissibility x = Admissibility::Boundary;
  Admissibility xk = Admissibility::Boundary;
  bool valid = false;
};

struct BCBEvent {
  explicit BCBEvent(Word w) : word(std::move(w)) {}
  double eta_star = 0.0;
  Word word;
  int flip_index = 0;
  double bracket_width = 0.0;
  Genericity genericity;

  bool classified = false;
  BCBClass classification = BCBClass::Degenerate;
  bool method_agreement = false;
  std::string degenerate_reason;
  std::optional<BCBClass> det_sign_vote;   // determinant-sign comparison
  std::optional<BCBClass> side_vote;       // +-eps admissibility comparison
  double side_eps = 0.0;
  SideSample below, above;
};

// Bisects the first component of the cycle's k-th point to |y| < eps_sign at
// eta-resolution 1e-12.  NoSignChange / LostUniqueness are reported for a
// bracket without a root or with det(I - M) crossing zero inside it.
BCBEvent locate_bcb(const Family& family, const Word& word, int k, double eta_lo,
                    double eta_hi);

// Primary method: the signs of det(I - M_X) and det(I - M_{X^k}) at eta*
// (equal signs -> persistence, opposite -> nonsmooth fold).  Cross-check:
// admissibility of both cycles at eta* +- eps (same-side admissible ->
// nonsmooth fold, opposite sides -> persistence).  Disagreement or failed
// genericity yields Degenerate, never a silent resolution.
void classify_bcb(BCBEvent& event, const Family& family);

// Pure vote combinator (exposed for the degenerate-fixture tests).
std::pair<BCBClass, bool> combine_classification_votes(BCBClass det_vote,
                                                       std::optional<BCBClass> side_vote);

enum class AuditStatus { Pass, NotApplicable, TheoremViolation };
const char* audit_status_name(AuditStatus s);

struct AuditReport {
  AuditStatus status = AuditStatus::NotApplicable;
  std::optional<RotationalParams> rotational;
  std::optional<int> j;  // flip position in d-steps within the canonical word
  std::string detail;
};

// For a rotational word flipped at k = j*d mod p with j in {0, ell-1, ell,
// p-1} and a generic event, anything but a nonsmooth fold is a theorem
// violation (a software bug, not a mathematical possibility).
AuditReport rotational_bcb_audit(const BCBEvent& event);

// Randomized campaign: random planar families in which a rotational cycle
// F[ell,m,p] (2 <= ell <= p-2) is admissible somewhere and loses
// admissibility at a j-set flip index with genericity satisfied.  Every
// non-degenerate event must classify as a nonsmooth fold.
struct AuditCampaign {
  int requested = 0;
  int events = 0;
  int nonsmooth_folds = 0;
  int persistence = 0;
  int degenerate = 0;
  int theorem_violations = 0;
  int families_tried = 0;
};

AuditCampaign run_rotational_audit_campaign(int target_events, unsigned long long seed,
                                            int p_max = 9);

}  // namespace pwl

#endif
