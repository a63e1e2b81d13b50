/* C API for the staggered-walk torus search library.
 *
 * All functions that can fail return sw_status; SW_OK is 0. On failure a
 * human-readable detail string is stored per thread and can be fetched with
 * sw_last_error() until the next failing call on the same thread. Output
 * pointers are written only on SW_OK.
 */
#ifndef STAGWALK_H
#define STAGWALK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
    SW_OK = 0,
    SW_ERR_INVALID_ARGUMENT = 1,
    SW_ERR_CAP_EXCEEDED = 2,   /* dense-operator cap */
    SW_ERR_NO_SIGN_CHANGE = 3, /* secular root bracketing failed */
    SW_ERR_IO = 4,
    SW_ERR_INTERNAL = 5
} sw_status;

const char* sw_status_string(sw_status status);
const char* sw_last_error(void);
const char* sw_version(void);

/* Torus side is 2n; vertices are (x, y) with 0 <= x, y < 2n. `ordering` is a
 * comma-separated permutation of the four tessellation labels, e.g.
 * "00,01,10,11" (the default; it is also the application order, first to
 * last). global_sign must be +1 or -1. When has_marked is 0 the walk has no
 * oracle and sw_walk_step behaves like sw_walk_step_unmarked. */
typedef struct sw_config {
    int n;
    double theta;
    char ordering[16];
    int global_sign;
    int has_marked;
    int marked_x;
    int marked_y;
} sw_config;

/* theta = pi/4, default ordering, sign -1, marked vertex (0, 0). */
void sw_config_default(int n, sw_config* out);

typedef struct sw_walk sw_walk;
typedef struct sw_state sw_state;

sw_status sw_walk_create(const sw_config* config, sw_walk** out);
void sw_walk_destroy(sw_walk* walk);

/* Uniform superposition over the even-parity sublattice. */
sw_status sw_state_create_initial(const sw_walk* walk, sw_state** out);
void sw_state_destroy(sw_state* state);

sw_status sw_walk_step(const sw_walk* walk, sw_state* state);
sw_status sw_walk_step_unmarked(const sw_walk* walk, sw_state* state);
/* Applies `steps` marked steps in place. When probs is non-NULL it receives
 * steps + 1 values: the probability at the marked vertex before the first
 * step and after each step. Requires a marked walk if probs is non-NULL. */
sw_status sw_walk_evolve(const sw_walk* walk, sw_state* state, long steps,
                         double* probs);

sw_status sw_state_num_vertices(const sw_state* state, long* out);
sw_status sw_state_amplitude(const sw_state* state, int x, int y, double* re,
                             double* im);
sw_status sw_state_norm(const sw_state* state, double* out);
/* CSV snapshot with header x,y,re,im,prob; NULL or empty path means stdout. */
sw_status sw_state_write_csv(const sw_state* state, const char* path);

/* Accepts plain radians ("0.7853981633974483") or multiples of pi written as
 * "[coef]pi[/den]": "pi/4", "3pi/8", "-pi", "0.5pi". */
sw_status sw_parse_theta(const char* text, double* out);

/* Smallest positive eigenphase of the unmarked walk. NULL ordering means the
 * default. */
sw_status sw_phi_min(int n, double theta, const char* ordering, double* out);
/* Principal eigenphase of the marked walk, theta = pi/4, default ordering. */
sw_status sw_lambda_root(int n, double* out);
/* Same quantity for arbitrary theta and ordering (plane-scan path). */
sw_status sw_lambda_general(int n, double theta, const char* ordering,
                            double* out);

typedef struct sw_asymptotics_record {
    int n;
    double lambda_exact;
    double lambda_approx;
    double c2_direct;
    double c2_reduced;
    double i_n;
    double phi_min;
    double overlap_marked;
    long t_opt;
    double p_model;
} sw_asymptotics_record;

sw_status sw_asymptotics_compute(int n, sw_asymptotics_record* out);

typedef struct sw_run_record {
    int n;
    long num_vertices;
    long t_opt;
    double p_max;
    double lambda;      /* NaN when no closed form applies */
    double phi_min;     /* likewise */
    double wall_time_s; /* 0 unless timing was requested */
    int amplified;      /* 0: the first-maximum rule never fired */
} sw_run_record;

/* Runs the search experiment. The config must keep sign -1 and the marked
 * vertex at (0, 0); theta and ordering are free. max_steps <= 0 selects the
 * default cap 10 * sqrt(N ln N). */
sw_status sw_run_search(const sw_config* config, long max_steps, int with_timing,
                        sw_run_record* out);

typedef struct sw_fit_result {
    double exponent;
    double coefficient;
    double r_squared;
} sw_fit_result;

/* Least squares of log y against log x: y ~ coefficient * x^exponent. */
sw_status sw_fit_power_law(const double* x, const double* y, long count,
                           sw_fit_result* out);

/* Command-level wrappers: compute and emit in one call. format is "csv" or
 * "json"; NULL or empty out_path means stdout. These back the CLI one to one. */
sw_status sw_cmd_search(const sw_config* config, long max_steps, int with_timing,
                        const char* format, const char* out_path);
sw_status sw_cmd_scaling(const int* n_values, long count, double theta,
                         const char* ordering, long max_steps, int with_timing,
                         const char* format, const char* out_path);
sw_status sw_cmd_theta_scan(int n, const double* thetas, long count,
                            const char* ordering, long max_steps, int with_timing,
                            const char* format, const char* out_path);
sw_status sw_cmd_eigen_trend(const int* n_values, long count, double theta,
                             const char* ordering, const char* format,
                             const char* out_path);
sw_status sw_cmd_spectrum(int n, const char* format, const char* out_path);
sw_status sw_cmd_appendix(const int* n_values, long count, const char* format,
                          const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* STAGWALK_H */
