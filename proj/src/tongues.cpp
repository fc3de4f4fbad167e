#include "pwl/tongues.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <set>
#include <thread>

#include "pwl/error.hpp"
#include "pwl/tolerances.hpp"

namespace pwl {

const char* cell_kind_name(CellKind k) {
  switch (k) {
    case CellKind::FixedPoint: return "fixed_point";
    case CellKind::ModeLocked: return "mode_locked";
    case CellKind::None: return "none";
    case CellKind::Skipped: return "skipped";
  }
  return "unknown";
}

std::vector<WordEntry> rotational_word_table(int p_max) {
  std::vector<WordEntry> table;
  std::set<std::string> seen;  // shift classes describe one and the same cycle
  for (int p = 2; p <= p_max; ++p)
    for (int m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      for (int ell = 1; ell < p; ++ell) {
        Word w = Word::rotational(ell, m, p);
        if (!seen.insert(w.canonical_rotation().str()).second) continue;
        table.push_back(WordEntry{p, m, ell, std::move(w)});
      }
    }
  return table;
}

double theoretical_tongue_root(double alpha) {
  if (alpha < -2.0 || alpha > 2.0)
    throw_domain(ErrorCode::BadInput, "theoretical_tongue_root: |alpha| <= 2 required");
  return std::acos(0.5 * alpha) / (2.0 * std::numbers::pi);
}

PWLMap build_cell_map(const GridSpec& spec, double x, double y) {
  if (spec.family == "json_interp") {
    if (spec.corners.size() != 4)
      throw_domain(ErrorCode::BadInput, "json_interp scan needs 4 corner maps");
    const double u = (spec.ax1.hi != spec.ax1.lo) ? (x - spec.ax1.lo) / (spec.ax1.hi - spec.ax1.lo) : 0.0;
    const double v = (spec.ax2.hi != spec.ax2.lo) ? (y - spec.ax2.lo) / (spec.ax2.hi - spec.ax2.lo) : 0.0;
    const int n = spec.corners[0].dim();
    Mat al(n), ar(n);
    Vec b(n);
    const double w00 = (1 - u) * (1 - v), w10 = u * (1 - v), w01 = (1 - u) * v, w11 = u * v;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        al.at(r, c) = w00 * spec.corners[0].left().at(r, c) + w10 * spec.corners[1].left().at(r, c) +
                      w01 * spec.corners[2].left().at(r, c) + w11 * spec.corners[3].left().at(r, c);
        ar.at(r, c) = w00 * spec.corners[0].right().at(r, c) + w10 * spec.corners[1].right().at(r, c) +
                      w01 * spec.corners[2].right().at(r, c) + w11 * spec.corners[3].right().at(r, c);
      }
      b[r] = w00 * spec.corners[0].offset()[r] + w10 * spec.corners[1].offset()[r] +
             w01 * spec.corners[2].offset()[r] + w11 * spec.corners[3].offset()[r];
    }
    return PWLMap(al, ar, b);
  }
  auto params = spec.fixed;
  params[spec.ax1.param] = x;
  params[spec.ax2.param] = y;
  return build_family_map(spec.family, params);
}

namespace {

void scan_cell(const GridSpec& spec, const std::vector<WordEntry>& table,
               const std::optional<RotationalParams>& single_word_params, CellResult& cell,
               CycleWorkspace& ws) {
  PWLMap map = build_cell_map(spec, cell.x, cell.y);
  const int n = map.dim();

  if (spec.mode == ScanMode::SingleWord) {
    const Word& w = *spec.word;
    CycleVerdict v = cycle_verdict(map, w, ws);
    const double closure_tol = tolerances().closure_factor * eps_lin() * v.orbit_scale;
    if (v.unique && v.admissibility == Admissibility::Admissible && v.stable &&
        v.closure_residual <= closure_tol) {
      cell.kind = CellKind::ModeLocked;
      cell.p = w.length();
      cell.ell = w.count_l();
      cell.m = single_word_params ? single_word_params->m : 0;
      cell.word = w.str();
      cell.max_modulus = v.max_modulus;
    } else {
      cell.kind = CellKind::None;
    }
    return;
  }

  // fast path: stable admissible fixed points, L side first
  auto [fl, fr] = fixed_points(map);
  for (const auto* rep : {&fl, &fr}) {
    if (rep->exists && rep->admissibility == Admissibility::Admissible && rep->stable) {
      cell.kind = CellKind::FixedPoint;
      cell.fp_side = rep->side;
      cell.max_modulus = rep->multipliers.front();
      if (!spec.exhaustive) return;
    }
  }
  if (cell.kind == CellKind::FixedPoint && !spec.exhaustive) return;

  // |det M| = |det A_L|^ell |det A_R|^(p-ell) >= 1 rules stability out exactly
  const double det_l = std::fabs(determinant(map.left()));
  const double det_r = std::fabs(determinant(map.right()));
  const double log_dl = std::log(det_l);
  const double log_dr = std::log(det_r);
  const double log_limit = n * std::log1p(-eps_sign());

  bool found = cell.kind == CellKind::FixedPoint;
  for (const auto& entry : table) {
    if (entry.ell * log_dl + (entry.p - entry.ell) * log_dr >= log_limit) continue;
    CycleVerdict v;
    try {
      v = cycle_verdict(map, entry.word, ws);
    } catch (const Error&) {
      continue;  // conditioning trouble on one word does not kill the cell
    }
    if (!v.unique || v.admissibility != Admissibility::Admissible || !v.stable) continue;
    const double closure_tol = tolerances().closure_factor * eps_lin() * v.orbit_scale;
    if (v.closure_residual > closure_tol) continue;
    if (!found) {
      cell.kind = CellKind::ModeLocked;
      cell.m = entry.m;
      cell.p = entry.p;
      cell.ell = entry.ell;
      cell.word = entry.word.str();
      cell.max_modulus = v.max_modulus;
      found = true;
      if (!spec.exhaustive) return;
    } else {
      ++cell.coexisting;
    }
  }
  if (!found) cell.kind = CellKind::None;
}

}  // namespace

ScanResult scan_grid(const GridSpec& spec, int threads) {
  if (spec.ax1.count < 2 || spec.ax2.count < 2)
    throw_domain(ErrorCode::BadInput, "scan_grid: axis resolutions must be >= 2");
  if (spec.p_max > 64)
    throw_domain(ErrorCode::BadInput, "scan_grid: p_max <= 64");
  if (spec.mode == ScanMode::SingleWord && !spec.word.has_value())
    throw_domain(ErrorCode::BadInput, "scan_grid: single-word mode needs a word");
  if (threads < 1) threads = 1;

  const auto t0 = std::chrono::steady_clock::now();
  ScanResult result;
  result.spec = spec;
  const int nx = spec.ax1.count, ny = spec.ax2.count;
  result.cells.resize(static_cast<size_t>(nx) * ny);

  std::vector<WordEntry> table;
  if (spec.mode == ScanMode::Full) table = rotational_word_table(spec.p_max);
  std::optional<RotationalParams> single_params;
  if (spec.mode == ScanMode::SingleWord) single_params = classify_rotational(*spec.word);

  std::atomic<int> next_row{0};
  auto worker = [&]() {
    CycleWorkspace ws;
    for (;;) {
      const int j = next_row.fetch_add(1);
      if (j >= ny) return;
      for (int i = 0; i < nx; ++i) {
        CellResult& cell = result.cells[static_cast<size_t>(j) * nx + i];
        cell.i = i;
        cell.j = j;
        cell.x = spec.ax1.value(i);
        cell.y = spec.ax2.value(j);
        try {
          scan_cell(spec, table, single_params, cell, ws);
        } catch (const Error& e) {
          cell.kind = CellKind::Skipped;
          cell.skip_reason = e.what();
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

namespace {

// Admissibility margin: positive iff every point is strictly on its side;
// -inf when no unique cycle exists.
double admissibility_margin(const PWLMap& map, const Word& word) {
  try {
    Cycle cyc = solve_cycle(map, word);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < word.length(); ++i) {
      double y1 = cyc.points[static_cast<size_t>(i)][0];
      margin = std::min(margin, (word.at(i) == 'L') ? -y1 : y1);
    }
    return margin;
  } catch (const Error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

int crossing_index(const Family& family, const Word& word, double eta_adm, double eta_lost) {
  Cycle adm = solve_cycle(family.at(eta_adm), word);
  Cycle lost(word);
  try {
    lost = solve_cycle(family.at(eta_lost), word);
  } catch (const Error&) {
    return -1;
  }
  for (int i = 0; i < word.length(); ++i) {
    double a = adm.points[static_cast<size_t>(i)][0];
    double b = lost.points[static_cast<size_t>(i)][0];
    if ((a < 0) != (b < 0)) return i;
  }
  return -1;
}

}  // namespace

BoundaryRefinement refine_boundary(const Family& family, const Word& word, double lo,
                                   double hi, int samples) {
  if (samples < 2 || hi <= lo)
    throw_domain(ErrorCode::BadInput, "refine_boundary: bad slice");
  const double step = (hi - lo) / (samples - 1);
  std::vector<double> margins(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i)
    margins[static_cast<size_t>(i)] = admissibility_margin(family.at(lo + i * step), word);

  int run_start = -1;
  for (int i = 0; i < samples; ++i)
    if (margins[static_cast<size_t>(i)] > 0.0) {
      run_start = i;
      break;
    }
  if (run_start < 0)
    throw_domain(ErrorCode::EmptyAdmissibleSet,
                 "refine_boundary: word never admissible on the slice");
  int run_end = run_start;
  while (run_end + 1 < samples && margins[static_cast<size_t>(run_end + 1)] > 0.0) ++run_end;

  auto bisect_edge = [&](double eta_in, double eta_out) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (eta_in + eta_out);
      if (admissibility_margin(family.at(mid), word) > 0.0)
        eta_in = mid;
      else
        eta_out = mid;
    }
    return std::pair<double, double>(eta_in, eta_out);
  };

  BoundaryRefinement ref;
  ref.run_lo = lo + run_start * step;
  ref.run_hi = lo + run_end * step;
  ref.possible_shrinking = (run_end - run_start) <= 1;
  if (run_start > 0) {
    auto [ein, eout] = bisect_edge(ref.run_lo, ref.run_lo - step);
    ref.has_enter = true;
    ref.enter_lo = std::min(ein, eout);
    ref.enter_hi = std::max(ein, eout);
    ref.k_enter = crossing_index(family, word, ein, eout);
  }
  if (run_end + 1 < samples) {
    auto [ein, eout] = bisect_edge(ref.run_hi, ref.run_hi + step);
    ref.has_exit = true;
    ref.exit_lo = std::min(ein, eout);
    ref.exit_hi = std::max(ein, eout);
    ref.k_exit = crossing_index(family, word, ein, eout);
  }
  return ref;
}

std::vector<TongueInfo> summarize_tongues(const ScanResult& scan) {
  std::map<std::pair<int, int>, TongueInfo> tongues;
  const int nx = scan.spec.ax1.count, ny = scan.spec.ax2.count;
  for (const auto& cell : scan.cells) {
    if (cell.kind != CellKind::ModeLocked) continue;
    auto& info = tongues[{cell.p, cell.m}];
    info.m = cell.m;
    info.p = cell.p;
    ++info.cells;
    ++info.ell_counts[cell.ell];
  }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const CellResult& a = scan.at(i, j);
      if (a.kind != CellKind::ModeLocked) continue;
      auto check_neighbour = [&](const CellResult& b) {
        if (b.kind != CellKind::ModeLocked || b.m != a.m || b.p != a.p || b.ell == a.ell)
          return;
        auto& info = tongues[{a.p, a.m}];
        if (info.pinch_candidates.size() < 64)
          info.pinch_candidates.emplace_back(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
      };
      if (i + 1 < nx) check_neighbour(scan.at(i + 1, j));
      if (j + 1 < ny) check_neighbour(scan.at(i, j + 1));
    }
  std::vector<TongueInfo> out;
  out.reserve(tongues.size());
  for (auto& [key, info] : tongues) out.push_back(std::move(info));
  return out;
}

EllTransitionCheck check_ell_transitions(const ScanResult& scan, int max_checks) {
  EllTransitionCheck res;
  const int nx = scan.spec.ax1.count, ny = scan.spec.ax2.count;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const CellResult& a = scan.at(i, j);
      if (a.kind != CellKind::ModeLocked) continue;
      const CellResult* neighbours[2] = {nullptr, nullptr};
      if (i + 1 < nx) neighbours[0] = &scan.at(i + 1, j);
      if (j + 1 < ny) neighbours[1] = &scan.at(i, j + 1);
      for (const CellResult* b : neighbours) {
        if (!b || b->kind != CellKind::ModeLocked) continue;
        if (b->m != a.m || b->p != a.p || b->ell == a.ell) continue;
        ++res.candidates;
        if (res.checked >= max_checks) continue;
        ++res.checked;
        // the lower-ell cell's word, followed along the segment towards the
        // other cell until it stops being admissible
        const CellResult* low = (a.ell < b->ell) ? &a : b;
        const CellResult* high = (a.ell < b->ell) ? b : &a;
        try {
          Family seg = make_interp_family(build_cell_map(scan.spec, low->x, low->y),
                                          build_cell_map(scan.spec, high->x, high->y));
          Word word(low->word);
          BoundaryRefinement ref = refine_boundary(seg, word, 0.0, 1.0, 64);
          if (!ref.has_exit || ref.k_exit < 0) {
            ++res.skipped;  // admissible through the segment: stability handoff
            continue;
          }
          BCBEvent ev = locate_bcb(seg, word, ref.k_exit, ref.exit_lo, ref.exit_hi);
          classify_bcb(ev, seg);
          AuditReport audit = rotational_bcb_audit(ev);
          if (audit.status == AuditStatus::TheoremViolation)
            ++res.persistence_violations;
          else if (ev.classification == BCBClass::NonsmoothFold)
            ++res.folds;
          else if (ev.classification == BCBClass::Degenerate)
            ++res.degenerate;
          else
            ++res.skipped;  // persistence on a non-j-set flip: not a violation
        } catch (const Error&) {
          ++res.skipped;
        }
      }
    }
  }
  return res;
}

namespace {

std::string dtos(double v) {
  char buf[40];
  // shortest representation that round-trips, stable across runs
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = std::strtod(buf, nullptr);
    if (back == v) break;
  }
  return buf;
}

}  // namespace

std::string scan_csv(const ScanResult& scan) {
  std::string out = scan.spec.ax1.param + "," + scan.spec.ax2.param +
                    ",verdict,m,p,ell,max_modulus\n";
  for (const auto& cell : scan.cells) {
    out += dtos(cell.x);
    out += ',';
    out += dtos(cell.y);
    out += ',';
    switch (cell.kind) {
      case CellKind::FixedPoint:
        out += "fixed_point_";
        out += cell.fp_side;
        out += ",,,,";
        out += dtos(cell.max_modulus);
        break;
      case CellKind::ModeLocked:
        out += "mode_locked,";
        out += std::to_string(cell.m);
        out += ',';
        out += std::to_string(cell.p);
        out += ',';
        out += std::to_string(cell.ell);
        out += ',';
        out += dtos(cell.max_modulus);
        break;
      case CellKind::None:
        out += "none,,,,";
        break;
      case CellKind::Skipped:
        out += "skipped,,,,";
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace pwl
