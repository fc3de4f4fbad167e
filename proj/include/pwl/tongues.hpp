#ifndef PWL_TONGUES_HPP
#define PWL_TONGUES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pwl/bcb.hpp"
#include "pwl/cycles.hpp"
#include "pwl/families.hpp"
#include "pwl/words.hpp"

namespace pwl {

struct Axis {
  std::string param;
  double lo = 0.0, hi = 1.0;
  int count = 2;
  double value(int i) const { return lo + (hi - lo) * i / (count - 1); }
  double step() const { return (hi - lo) / (count - 1); }
};

enum class ScanMode { Full, SingleWord };

struct GridSpec {
  std::string family;                   // "pws2d", "nf2d" or "json_interp"
  std::map<std::string, double> fixed;  // family parameters not on the axes
  Axis ax1, ax2;
  int p_max = 20;
  ScanMode mode = ScanMode::Full;
  std::optional<Word> word;  // single-word mode
  bool exhaustive = false;   // keep enumerating to count coexisting attractors
  std::vector<PWLMap> corners;  // json_interp: maps at (lo,lo),(hi,lo),(lo,hi),(hi,hi)
};

enum class CellKind { FixedPoint, ModeLocked, None, Skipped };
const char* cell_kind_name(CellKind k);

struct CellResult {
  int i = 0, j = 0;
  double x = 0.0, y = 0.0;
  CellKind kind = CellKind::None;
  char fp_side = ' ';
  int m = 0, p = 0, ell = 0;
  std::string word;
  double max_modulus = 0.0;
  int coexisting = 0;
  std::string skip_reason;
};

struct ScanResult {
  GridSpec spec;
  std::vector<CellResult> cells;  // row-major: index = j * ax1.count + i
  double seconds = 0.0;

  const CellResult& at(int i, int j) const {
    return cells[static_cast<size_t>(j) * spec.ax1.count + i];
  }
};

PWLMap build_cell_map(const GridSpec& spec, double x, double y);

// Per-cell verdicts: fixed points first, then rotational words ordered by
// (p, m, ell) ascending; the first admissible stable cycle wins.  Cells are
// data-parallel; the output order never depends on the thread count.
ScanResult scan_grid(const GridSpec& spec, int threads);

struct WordEntry {
  int p, m, ell;
  Word word;
};
std::vector<WordEntry> rotational_word_table(int p_max);

// omega at which a tongue roots on the fixed-point boundary of the pws2d
// family: omega = acos(alpha/2) / 2pi.
double theoretical_tongue_root(double alpha);

struct BoundaryRefinement {
  bool has_enter = false;  // admissible run starts inside the slice
  double enter_lo = 0.0, enter_hi = 0.0;
  int k_enter = -1;
  bool has_exit = false;
  double exit_lo = 0.0, exit_hi = 0.0;
  int k_exit = -1;
  double run_lo = 0.0, run_hi = 0.0;  // the admissible run itself
  bool possible_shrinking = false;    // run width below the sampling step
};

// Bisects the admissibility-loss ends of the first admissible run of the
// word's cycle on [lo, hi]; the reported brackets plug into locate_bcb.
BoundaryRefinement refine_boundary(const Family& family, const Word& word, double lo,
                                   double hi, int samples = 256);

struct TongueInfo {
  int m = 0, p = 0;
  int cells = 0;
  std::map<int, int> ell_counts;
  std::vector<std::pair<double, double>> pinch_candidates;
};

std::vector<TongueInfo> summarize_tongues(const ScanResult& scan);

struct EllTransitionCheck {
  int candidates = 0;   // adjacent same-(m,p) pairs with different ell
  int checked = 0;
  int folds = 0;
  int degenerate = 0;
  int persistence_violations = 0;  // theorem violations
  int skipped = 0;                 // stability loss, lost brackets, ...
};

// Classifies the BCB at which the lower-ell word of each adjacent
// ell-transition pair loses admissibility along the connecting segment; a
// persistence verdict for a j-set rotational flip counts as a violation.
EllTransitionCheck check_ell_transitions(const ScanResult& scan, int max_checks);

std::string scan_csv(const ScanResult& scan);

}  // namespace pwl

#endif
