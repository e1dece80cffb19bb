#ifndef CATKIT_CATKIT_H
#define CATKIT_CATKIT_H

/* C interface to libcatkit. Lengths are in units of the inclusion radius a,
 * wavevectors in 1/a. Every call returns a catkit_status; on failure the
 * message is available from catkit_last_error() on the same thread. Objects
 * returned through out-parameters are owned by the caller and released with
 * the matching *_free function (which accepts NULL). */

#include <stddef.h>

#if defined(_WIN32)
#define CATKIT_API __declspec(dllexport)
#else
#define CATKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum catkit_status {
    CATKIT_OK = 0,
    CATKIT_E_INVALID_ARGUMENT,
    CATKIT_E_DOMAIN,
    CATKIT_E_UNSUPPORTED_ORDER,
    CATKIT_E_OVERFLOW,
    CATKIT_E_NO_FINITE_PERMITTIVITY,
    CATKIT_E_POLE,
    CATKIT_E_RESOLUTION,
    CATKIT_E_PAIRING_AMBIGUITY,
    CATKIT_E_MISSED_ROOT,
    CATKIT_E_QUADRATURE,
    CATKIT_E_DEGENERATE,
    CATKIT_E_INSUFFICIENT_DATA,
    CATKIT_E_IO,
    CATKIT_E_INTERNAL
} catkit_status;

typedef enum catkit_method { CATKIT_METHOD_SHIFT = 0, CATKIT_METHOD_EXACT = 1 } catkit_method;
typedef enum catkit_source { CATKIT_SOURCE_ASYMPTOTIC = 0, CATKIT_SOURCE_QUADRATURE = 1 } catkit_source;

CATKIT_API const char* catkit_version(void);
CATKIT_API const char* catkit_status_name(catkit_status status);
CATKIT_API const char* catkit_last_error(void);

/* n < 1 restores the default (CATKIT_THREADS, else hardware concurrency). */
CATKIT_API catkit_status catkit_set_threads(int n);
CATKIT_API int catkit_get_threads(void);

/* Special functions; output pointers may be NULL */
CATKIT_API catkit_status catkit_sph_bessel(int l, double x, double* j, double* jp, double* y, double* yp);
CATKIT_API catkit_status catkit_mod_sph_bessel_i(int l, double x, double* value, double* derivative);

/* Media: "vacuum", "drude:kp=<float>", "dielectric:eps=<float>", "pec" */
typedef struct catkit_medium catkit_medium;

CATKIT_API catkit_status catkit_medium_parse(const char* text, catkit_medium** out);
CATKIT_API void catkit_medium_free(catkit_medium* m);
/* Canonical text form; writes at most cap bytes including the terminator and
 * stores the full length in *len (may be NULL). */
CATKIT_API catkit_status catkit_medium_describe(const catkit_medium* m, char* buf, size_t cap, size_t* len);
CATKIT_API catkit_status catkit_permittivity(const catkit_medium* m, double k, double* eps);

/* Scattering */
CATKIT_API catkit_status catkit_phase_shift(const catkit_medium* m, int l, double k, double a, double* delta);
CATKIT_API catkit_status catkit_phase_shift_unwrapped(const catkit_medium* m, int l, double a, const double* k,
                                                      size_t n, double* delta);
CATKIT_API catkit_status catkit_delta_oracle(const catkit_medium* m, int l, double a, double R, int s,
                                             double* delta);

/* Continuous phase-shift curve including points inserted to resolve the branch. */
typedef struct catkit_curve catkit_curve;

CATKIT_API catkit_status catkit_phase_shift_curve(const catkit_medium* m, int l, double a, const double* k, size_t n,
                                                  catkit_curve** out);
CATKIT_API size_t catkit_curve_size(const catkit_curve* c);
CATKIT_API catkit_status catkit_curve_data(const catkit_curve* c, double* k, double* delta);
CATKIT_API void catkit_curve_free(catkit_curve* c);

/* Cavity spectra (a = 1 per the units above, R >= 10, l = 1) */
typedef struct catkit_spectrum catkit_spectrum;

CATKIT_API catkit_status catkit_empty_cavity_wavevectors(double R, int n, double* q);
CATKIT_API catkit_status catkit_spectrum_build(const catkit_medium* m, double R, int n, catkit_method method,
                                               catkit_spectrum** out);
CATKIT_API size_t catkit_spectrum_size(const catkit_spectrum* s);
/* Any output pointer may be NULL; arrays hold catkit_spectrum_size() values. */
CATKIT_API catkit_status catkit_spectrum_data(const catkit_spectrum* s, double* q, double* k, double* delta);
CATKIT_API void catkit_spectrum_free(catkit_spectrum* s);

/* Overlap matrix and ground-state overlap */
typedef struct catkit_overlap catkit_overlap;

typedef struct catkit_overlap_result {
    int n;
    double log_abs_det_D;
    int sign_det;
    double log_S;
} catkit_overlap_result;

CATKIT_API catkit_status catkit_mode_overlap_asymptotic(double k, double q, double R, double* out);
CATKIT_API catkit_status catkit_mode_overlap_quadrature(const catkit_medium* m, double R, double k, double q,
                                                        double* out);
CATKIT_API catkit_status catkit_overlap_build(const catkit_spectrum* s, catkit_source source, catkit_overlap** out);
CATKIT_API size_t catkit_overlap_size(const catkit_overlap* o);
/* Row-major n x n copy; rows are empty-cavity modes. */
CATKIT_API catkit_status catkit_overlap_matrix(const catkit_overlap* o, double* D);
CATKIT_API catkit_status catkit_overlap_result_get(const catkit_overlap* o, catkit_overlap_result* out);
CATKIT_API void catkit_overlap_free(catkit_overlap* o);

/* D is row-major n x n. A singular matrix gives log_abs = -inf, sign = 0. */
CATKIT_API catkit_status catkit_log_abs_det(const double* D, size_t n, double* log_abs, int* sign);
CATKIT_API catkit_status catkit_partial_overlap(const double* q, const double* k, const double* D, size_t n,
                                                catkit_overlap_result* out);
CATKIT_API catkit_status catkit_overlap_quadrature_oracle(const double* q, const double* k, const double* D, size_t n,
                                                          double* S);

/* Scaling analysis */
typedef struct catkit_fit {
    double eta;
    double stderr_eta;
    int n_points;
    double n_min;
    double n_max;
} catkit_fit;

CATKIT_API catkit_status catkit_fit_power_law(const double* N, const double* log_value, size_t n, catkit_fit* out);

/* Numeric result table with named columns, row-major. */
typedef struct catkit_table catkit_table;

CATKIT_API size_t catkit_table_rows(const catkit_table* t);
CATKIT_API size_t catkit_table_cols(const catkit_table* t);
CATKIT_API const char* catkit_table_column(const catkit_table* t, size_t col);
CATKIT_API const double* catkit_table_data(const catkit_table* t);
CATKIT_API void catkit_table_free(catkit_table* t);

/* Columns N, R_over_a, log_abs_det_D, log_S. */
CATKIT_API catkit_status catkit_scan_fixed_ratio(const catkit_medium* m, double ratio, const int* N, size_t n,
                                                 catkit_method method, catkit_source source, catkit_table** out);
/* Columns N, R_over_a, log_abs_det_D; N-major. */
CATKIT_API catkit_status catkit_contour_scan(const catkit_medium* m, const int* N, size_t nN, const double* R_over_a,
                                             size_t nR, catkit_table** out);
/* Median minimizing N a / R over the lines of a contour table. */
CATKIT_API catkit_status catkit_contour_ridge(const catkit_table* contour, double* ratio, int* lines);
/* Columns ratio, k_a, delta, eta, eta_stderr. */
CATKIT_API catkit_status catkit_eta_vs_delta(const catkit_medium* m, const double* ratios, size_t n_ratios,
                                             const int* N, size_t nN, catkit_table** out);
CATKIT_API catkit_status catkit_pc_check(double ratio, int N, double* computed_log_S, double* closed_form_log_S);

typedef void (*catkit_selftest_cb)(void* user, const char* name, int passed, const char* detail);

/* Runs the oracle suite, reporting each check through cb (may be NULL). */
CATKIT_API catkit_status catkit_selftest(catkit_selftest_cb cb, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
