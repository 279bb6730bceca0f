/* SPDX-License-Identifier: Apache-2.0
 *
 * avl - spectral toolkit for doubly-connected vortex patches near an annulus.
 *
 * C interface to the shared library.  All functions return avl_status;
 * outputs go through pointers.  On failure, avl_last_error() returns a
 * thread-local message describing what went wrong.  Run configurations are
 * opaque handles fed with string key/value pairs; executing a run writes its
 * CSV artifacts and a JSON manifest next to them.
 */
#ifndef AVL_H
#define AVL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#ifdef AVL_BUILD
#define AVL_API __declspec(dllexport)
#else
#define AVL_API __declspec(dllimport)
#endif
#else
#define AVL_API __attribute__((visibility("default")))
#endif

typedef enum avl_status {
    AVL_OK = 0,
    AVL_ERR_USAGE = 1,     /* bad parameter, unknown key, precondition */
    AVL_ERR_GEOMETRY = 2,  /* interface geometry broke down */
    AVL_ERR_REGIME = 3,    /* outside the elliptic/bifurcation regime */
    AVL_ERR_AMBIGUOUS = 4, /* no usable spectral peak */
    AVL_ERR_INTERNAL = 5
} avl_status;

AVL_API const char* avl_version(void);

/* Message for the most recent failure on this thread. */
AVL_API const char* avl_last_error(void);

/* Frozen numeric constants (quadrature orders, guards, thresholds) as JSON. */
AVL_API const char* avl_tolerances_json(void);

/* ---- closed-form spectral quantities of the equilibrium annulus ---- */

/* b^m + 1 - m(1-b^2)/2 */
AVL_API avl_status avl_f_poly(int mfold, double b, double* out);

/* Delta_j(b) = b^{2|j|} - ((1-b^2)|j|/2 - 1)^2 */
AVL_API avl_status avl_delta(int j, double b, double* out);

/* unique zero of b -> f_poly(n,b) in (0,1) */
AVL_API avl_status avl_root_b_n(int n, double* out);

/* smallest n >= 3 with root_b_n(n) > b_star */
AVL_API avl_status avl_m_star(double b_star, int* out);

/* eigenvalue frequency Omega_{j,k}(b), k in {1,2}; elliptic regime only */
AVL_API avl_status avl_omega_jk(int j, int k, double b, double omega, double* out);

/* eigenvector coefficient a_j(b) */
AVL_API avl_status avl_a_j(int j, double b, double* out);

/* square-root correction r_j(b) of the frequency asymptotics */
AVL_API avl_status avl_r_j(int j, double b, double* out);

/* bifurcation pair (Omega_m^-, Omega_m^+); requires f_poly(m,b) <= 0 */
AVL_API avl_status avl_omega_pm(int mfold, double b, double* out_minus, double* out_plus);

/* monotonicity threshold velocity Omega*_m(b_star) */
AVL_API avl_status avl_omega_star(int mfold, double b_star, double* out);

/* ---- subcommand runners ---- */

typedef struct avl_run avl_run;

/* subcommand: dispersion | simulate | spectrum | melnikov-measure | diagnose */
AVL_API avl_run* avl_run_new(const char* subcommand);
AVL_API void avl_run_free(avl_run* run);

/* Accumulates configuration; keys mirror the CLI flags without the dashes. */
AVL_API avl_status avl_run_set(avl_run* run, const char* key, const char* value);

/* Validates, computes, writes the CSV artifacts and a _manifest.json. */
AVL_API avl_status avl_run_execute(avl_run* run);

/* After execute: the manifest JSON (inputs, version, wall time, tolerances). */
AVL_API const char* avl_run_manifest_json(const avl_run* run);

/* After execute: number of CSV files written and their paths. */
AVL_API int avl_run_artifact_count(const avl_run* run);
AVL_API const char* avl_run_artifact_path(const avl_run* run, int index);

#ifdef __cplusplus
}
#endif

#endif /* AVL_H */
