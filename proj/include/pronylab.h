/*
 * pronylab C API.
 *
 * A small stability laboratory for trigonometric moment problems on the
 * d-torus: forward moment maps of discrete complex measures, localizing
 * functions, ESPRIT recovery, a 1-Wasserstein solver for complex
 * probability-like measures, clustered-Vandermonde singular value bounds,
 * and Monte-Carlo certification drivers for the associated stability
 * inequalities.
 *
 * Every function returns a pronylab_status; on failure,
 * pronylab_last_error() describes the problem (thread-local storage, valid
 * until the next call on the same thread). Objects are opaque handles that
 * must be released with their _free function.
 */
#ifndef PRONYLAB_H
#define PRONYLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PRONYLAB_API __declspec(dllexport)
#else
#define PRONYLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pronylab_status {
    PRONYLAB_OK = 0,
    PRONYLAB_ERR_INVALID_ARGUMENT = 1,
    PRONYLAB_ERR_PARSE = 2,
    PRONYLAB_ERR_IO = 3,
    PRONYLAB_ERR_DIMENSION_MISMATCH = 4,
    PRONYLAB_ERR_NUMERICAL = 5,
    PRONYLAB_ERR_BUDGET_EXHAUSTED = 6,
    PRONYLAB_ERR_UNKNOWN_THEOREM = 7,
    PRONYLAB_ERR_THEOREM_VIOLATION = 8
} pronylab_status;

PRONYLAB_API const char* pronylab_status_name(pronylab_status s);
PRONYLAB_API const char* pronylab_last_error(void);

typedef struct pronylab_measure pronylab_measure;
typedef struct pronylab_moments pronylab_moments;

/* ---- measures -------------------------------------------------------- */

/* nodes: m*d row-major coordinates in [0,1); weights: m interleaved re,im */
PRONYLAB_API pronylab_status pronylab_measure_create(int d, size_t m, const double* nodes,
                                                     const double* weights,
                                                     pronylab_measure** out);
PRONYLAB_API pronylab_status pronylab_measure_read_json(const char* path,
                                                        pronylab_measure** out);
PRONYLAB_API pronylab_status pronylab_measure_write_json(const pronylab_measure* mu,
                                                         const char* path);
PRONYLAB_API void pronylab_measure_free(pronylab_measure* mu);
PRONYLAB_API int pronylab_measure_dim(const pronylab_measure* mu);
PRONYLAB_API size_t pronylab_measure_size(const pronylab_measure* mu);
PRONYLAB_API pronylab_status pronylab_measure_atom(const pronylab_measure* mu, size_t idx,
                                                   double* node, double* w_re, double* w_im);
/* sep of the node set; error for fewer than two nodes */
PRONYLAB_API pronylab_status pronylab_measure_separation(const pronylab_measure* mu,
                                                         double* out);

/* ---- moments ----------------------------------------------------------
 * norm_p: 2 for the Euclidean ball, 0 for the full grid (max norm). */
PRONYLAB_API pronylab_status pronylab_moments_compute(const pronylab_measure* mu, int n,
                                                      int norm_p, pronylab_moments** out);
PRONYLAB_API pronylab_status pronylab_moments_read_csv(const char* path,
                                                       pronylab_moments** out);
PRONYLAB_API pronylab_status pronylab_moments_write_csv(const pronylab_moments* m,
                                                        const char* path);
PRONYLAB_API void pronylab_moments_free(pronylab_moments* m);
PRONYLAB_API size_t pronylab_moments_count(const pronylab_moments* m);
PRONYLAB_API int pronylab_moments_dim(const pronylab_moments* m);

/* ---- ESPRIT ------------------------------------------------------------ */

typedef struct pronylab_esprit_diag {
    double singular_gap;   /* sigma_M / sigma_{M+1} */
    int subspace_reliable; /* gap >= 10 */
} pronylab_esprit_diag;

PRONYLAB_API pronylab_status pronylab_esprit_recover(const pronylab_moments* m,
                                                     size_t node_count, pronylab_measure** out,
                                                     pronylab_esprit_diag* diag);

/* ---- Wasserstein ------------------------------------------------------- */

typedef struct pronylab_w1_result {
    double value;
    double theta;
    double gap; /* refinement minus coarse grid maximum */
    double tv_bound;
    double matched_bound; /* valid when has_matched_bound != 0 */
    int has_matched_bound;
} pronylab_w1_result;

PRONYLAB_API pronylab_status pronylab_w1(const pronylab_measure* a, const pronylab_measure* b,
                                         int angles, pronylab_w1_result* out);

/* ---- localizer sampling ------------------------------------------------ */

/* window: "hann", "parabolic" or "cosine"; grid points per axis over
 * [lo, hi]; for d >= 3 only axes and the main diagonal are written. */
PRONYLAB_API pronylab_status pronylab_psi_sample_csv(int d, int n, double q,
                                                     const char* window, int grid, double lo,
                                                     double hi, const char* out_path);

/* ---- clustered Vandermonde bounds -------------------------------------- */

typedef struct pronylab_vandermonde_result {
    double sigma_min; /* over the l2-ball frequency set */
    double bound;
    double margin;
    double ratio;
    double tau;
    double delta;
    double delta_required;
    int premise_ok;
    double nagel_sigma_min; /* over the full grid */
    double nagel_bound;
    double nagel_margin;
    double nagel_delta_required;
    int nagel_premise_ok;
} pronylab_vandermonde_result;

/* Uses the node set of the measure; weights are ignored. */
PRONYLAB_API pronylab_status pronylab_vandermonde_pairs(const pronylab_measure* nodes, int n,
                                                        pronylab_vandermonde_result* out);

/* ---- Monte-Carlo certification driver ----------------------------------- */

typedef struct pronylab_check_config {
    int trials;
    uint64_t seed0;
    int n;
    int d;
    int max_nodes;
    double c_min;
    double kappa;
    double delta_min;
    double delta_max;
    int angles;
    int threads;       /* 0: all available, capped by PRONYLAB_THREADS */
    int deterministic; /* nonzero: omit timestamps from outputs */
} pronylab_check_config;

/* theorem ids: univariate, diederichs1d, 2d-l2, 2d-linf, highd, global-w1,
 * md-order, esprit, vandermonde-pairs */
PRONYLAB_API pronylab_status pronylab_check_defaults(const char* theorem,
                                                     pronylab_check_config* out);

/* Writes a JSON-lines report and a CSV summary (either path may be NULL).
 * Returns PRONYLAB_ERR_THEOREM_VIOLATION when a premise-holding trial
 * fails its inequality. */
PRONYLAB_API pronylab_status pronylab_check_run(const char* theorem,
                                                const pronylab_check_config* cfg,
                                                const char* jsonl_path, const char* csv_path,
                                                int* premise_trials, int* violations);

#ifdef __cplusplus
}
#endif

#endif /* PRONYLAB_H */
