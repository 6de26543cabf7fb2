/* C interface to libstheta. Every function returns a status code; on
 * failure stheta_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * stheta_string_free. Characteristics are text: "r1 .. rg s1 .. sg" with
 * entries as integers or num/den. */
#ifndef STHETA_STHETA_H
#define STHETA_STHETA_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(STHETA_BUILDING_LIBRARY)
#define STHETA_API __attribute__((visibility("default")))
#else
#define STHETA_API
#endif

typedef enum stheta_status {
  STHETA_OK = 0,
  STHETA_INVALID_ARGUMENT = 1,
  STHETA_DOMAIN = 2,   /* input outside the operation's domain */
  STHETA_NUMERIC = 3,  /* an error target could not be met */
  STHETA_PARSE = 4,
  STHETA_INTERNAL = 5
} stheta_status;

typedef struct stheta_siegel_point stheta_siegel_point;
typedef struct stheta_product stheta_product;
typedef struct stheta_cm_context stheta_cm_context;

STHETA_API const char* stheta_version(void);
STHETA_API const char* stheta_last_error(void);
STHETA_API const char* stheta_status_name(stheta_status status);
STHETA_API void stheta_string_free(char* s);

/* Z = re + i im, both g x g row-major. */
STHETA_API stheta_status stheta_siegel_point_new(int g, const double* re, const double* im,
                                                 stheta_siegel_point** out);
STHETA_API void stheta_siegel_point_free(stheta_siegel_point* z);
STHETA_API int stheta_siegel_point_genus(const stheta_siegel_point* z);

/* Theta(0, Z; r, s) and Phi = Theta(0, Z; r, s) / Theta(0, Z; 0, 0). tol <= 0
 * selects the default 1e-12. */
STHETA_API stheta_status stheta_theta_eval(const stheta_siegel_point* z, const char* chi, double tol,
                                           double* re, double* im);
STHETA_API stheta_status stheta_phi_eval(const stheta_siegel_point* z, const char* chi, double tol, double* re,
                                         double* im);

/* Theta products in the text format: a header "g N", then one term per line
 * "m r1 .. rg s1 .. sg"; '#' starts a comment. */
STHETA_API stheta_status stheta_product_parse(const char* text, stheta_product** out);
STHETA_API void stheta_product_free(stheta_product* p);
STHETA_API int stheta_product_genus(const stheta_product* p);
STHETA_API long stheta_product_level(const stheta_product* p);
STHETA_API stheta_status stheta_product_format(const stheta_product* p, char** text);
/* *ok is 1 when the family criterion holds at the product's own level;
 * *diagnostic lists the failing congruences. */
STHETA_API stheta_status stheta_product_check(const stheta_product* p, int* ok, char** diagnostic);
STHETA_API stheta_status stheta_product_eval(const stheta_product* p, const stheta_siegel_point* z, double tol,
                                             double* re, double* im);

/* The CM point of Q(zeta_5) and the simulated Artin action there. */
STHETA_API stheta_status stheta_cm_context_new(double theta_tol, stheta_cm_context** out);
STHETA_API void stheta_cm_context_free(stheta_cm_context* ctx);
/* A new SiegelPoint holding Z0. */
STHETA_API stheta_status stheta_cm_point(const stheta_cm_context* ctx, stheta_siegel_point** out);
/* x = coords[0] + coords[1] zeta + .. + coords[4] zeta^4. Writes a JSON
 * object with the multiplier exponent q (the factor is e(q)), the reduced
 * characteristic and the values Phi_chi(Z0) and e(q) Phi_chi'(Z0). */
STHETA_API stheta_status stheta_artin_action(const stheta_cm_context* ctx, const long coords[5], long p,
                                             const char* chi, char** json);
/* The quadratic forms a, b, c, d and the criterion value mod p, as JSON. */
STHETA_API stheta_status stheta_belong_criterion(const long coords[5], long p, char** json);

/* The worked cyclotomic computations of the primitive-generator section, as
 * JSON. */
STHETA_API stheta_status stheta_primgen_demo(char** json);

/* Runs the verification suites selected by a JSON config (keys primes,
 * tol_numeric, theta_tol, seed, suites; all optional). An invalid config
 * returns STHETA_INVALID_ARGUMENT. *exit_status is 0 when every check
 * passed and 1 otherwise. */
STHETA_API stheta_status stheta_run_suite(const char* config_json, int include_runtime, char** report_json,
                                          int* exit_status);

#ifdef __cplusplus
}
#endif

#endif
