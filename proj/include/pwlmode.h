/*
 * pwlmode C API: periodic solutions, border-collision bifurcations and
 * mode-locking analysis of two-piece piecewise-linear continuous maps.
 *
 * All functions return PWLMODE_OK (0) on success or an error code below;
 * pwlmode_last_error() describes the most recent failure on the calling
 * thread.  Strings returned through char** out-parameters are heap-allocated
 * and must be released with pwlmode_string_free().
 */
#ifndef PWLMODE_H
#define PWLMODE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PWLMODE_OK 0
#define PWLMODE_ERR_DOMAIN 2    /* violated precondition or hypothesis */
#define PWLMODE_ERR_NUMERIC 3   /* conditioning or convergence trouble */
#define PWLMODE_ERR_INTERNAL 4  /* inconsistency that indicates a bug */

typedef struct pwlmode_map pwlmode_map;

const char* pwlmode_version(void);
const char* pwlmode_last_error(void);
void pwlmode_string_free(char* s);

/* Tolerance knobs: "eps_sign" (default 1e-9), "eps_lin" (1e-12),
 * "closure_factor" (1e4), "mode_lock_tol" (1e-7).  Set before running an
 * analysis, not concurrently with one. */
int pwlmode_set_option(const char* name, double value);

/* --- maps ------------------------------------------------------------- */

/* family "pws2d" takes params [alpha, beta]; family "nf2d" takes
 * [tau_l, delta_l, tau_r, delta_r]. */
int pwlmode_map_family(const char* family, const double* params, size_t nparams,
                       pwlmode_map** out);
/* {"n": int, "A_L": [[...]], "A_R": [[...]], "b": [...]} */
int pwlmode_map_from_json(const char* json_text, pwlmode_map** out);
void pwlmode_map_free(pwlmode_map* map);

int pwlmode_map_dim(const pwlmode_map* map);
int pwlmode_map_to_json(const pwlmode_map* map, char** out_json);
/* x and y are arrays of the map dimension; y = f(x) */
int pwlmode_map_eval(const pwlmode_map* map, const double* x, double* y);
int pwlmode_map_fixed_points(const pwlmode_map* map, char** out_json);
/* out: 1 homeomorphism, 0 not, -1 indeterminate (product within eps_sign) */
int pwlmode_map_is_homeomorphism(const pwlmode_map* map, int* out);

/* --- words ------------------------------------------------------------ */

int pwlmode_mult_inverse(int m, int p, int* out_d);
/* the rotational word with ell L-symbols, rotation m/p */
int pwlmode_word_rotational(int ell, int m, int p, char** out_word);
/* {"rotational": bool, "ell", "m", "p", "shift", "d"} */
int pwlmode_word_classify(const char* word, char** out_json);

/* --- cycles ----------------------------------------------------------- */

/* word accepts a literal ("LRRRLRR") or constructor syntax ("F[2,2,7]") */
int pwlmode_cycle_solve(const pwlmode_map* map, const char* word, char** out_json);
/* x^X_1 via the adjugate identity det(P) rho^T b / det(I - M) */
int pwlmode_cycle_first_component(const pwlmode_map* map, const char* word, double* out);

/* --- circle analysis --------------------------------------------------- */

/* config JSON (all keys optional):
 *   {"x0": [..], "transient": int, "keep": int, "center": [x,y],
 *    "rotation_iterations": int, "max_den": int, "p_max": int,
 *    "mode": "attractor"|"unstable_manifold", "samples_csv": "path"}
 * Pass NULL for defaults.  The report carries degree, rotation estimate,
 * detected period, itinerary and the orbit-ordering data. */
int pwlmode_circle_analyze(const pwlmode_map* map, const char* config_json,
                           char** out_json);

/* --- parameter scans ---------------------------------------------------- */

/* spec JSON:
 *   {"family": "pws2d"|"nf2d"|"json_interp", "fixed": {...},
 *    "axes": [{"param","min","max","count"}, {...}],
 *    "p_max": int, "mode": "full"|"single_word", "word": "...",
 *    "exhaustive": bool, "corners": [4 maps]}
 * csv_path / summary_path may be NULL; the summary JSON is also returned. */
int pwlmode_scan_run(const char* spec_json, const char* csv_path,
                     const char* summary_path, int threads, char** out_summary_json);

/* --- border-collision bifurcations -------------------------------------- */

/* family JSON:
 *   {"family": "pws2d"|"nf2d", "params": {...}, "vary": "<param>"}
 *   {"family": "pws2d"|"nf2d", "from": {...}, "to": {...}}   (eta in [0,1])
 *   {"family": "interp", "map0": {...}, "map1": {...}}       (eta in [0,1])
 * Locates the BCB of the word's k-th point inside [eta_lo, eta_hi],
 * classifies it and runs the rotational audit.  flip_index -1 auto-detects
 * the crossing point at the first admissibility-loss edge in the bracket. */
int pwlmode_bcb_run(const char* family_json, const char* word, int flip_index,
                    double eta_lo, double eta_hi, char** out_event_json);

/* randomized nonsmooth-fold audit campaign over random planar families */
int pwlmode_audit_run(int target_events, unsigned long long seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* PWLMODE_H */
