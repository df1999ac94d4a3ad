#ifndef OPKIT_OPKIT_H
#define OPKIT_OPKIT_H

/* C interface to opkit. Every function returns an opk_status; on failure
 * opk_last_error() describes the most recent error on the calling thread.
 * Handles are opaque and owned by the caller; strings returned through
 * char** are released with opk_string_free. */

#include <stddef.h>

#if defined(OPKIT_BUILDING_LIBRARY)
#define OPK_API __attribute__((visibility("default")))
#else
#define OPK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum opk_status {
  OPK_OK = 0,
  OPK_ERR_INVALID_ARGUMENT,
  OPK_ERR_PARSE,
  OPK_ERR_NON_FINITE,
  OPK_ERR_SINGULAR,
  OPK_ERR_AMBIENT_MISMATCH,
  OPK_ERR_NOT_BOUNDED_BELOW,
  OPK_ERR_NOT_PURE,
  OPK_ERR_NO_WANDERING_SUBSPACE,
  OPK_ERR_UNSUPPORTED_REGIME,
  OPK_ERR_ONE_IN_SPECTRUM,
  OPK_ERR_NOT_CONCAVE,
  OPK_ERR_OUTSIDE_DISC,
  OPK_ERR_TAIL_NOT_CONVERGENT,
  OPK_ERR_ZERO_CONSTANT_TERM,
  OPK_ERR_ZERO_ON_BOUNDARY,
  OPK_ERR_SYMBOL_SINGULAR_AT_ORIGIN,
  OPK_ERR_TRUNCATION_TOO_SMALL,
  OPK_ERR_INVALID_AUTOMORPHISM,
  OPK_ERR_INTERNAL
} opk_status;

typedef struct opk_tolerance {
  double rank_tol;
  double psd_tol;
  double residual_tol;
  double tail_tol;
} opk_tolerance;

typedef struct opk_operator opk_operator;
typedef struct opk_model opk_model;
typedef struct opk_series opk_series;

typedef struct opk_classification {
  int bounded_below;
  double bounded_below_margin;
  int concave;
  double max_defect;
  int two_contraction;
  double min_defect;
  int two_isometry;
  double defect_norm;
  int pure;
  int wandering;
} opk_classification;

OPK_API const char* opk_last_error(void);
OPK_API const char* opk_status_name(opk_status s);
OPK_API void opk_string_free(char* s);
OPK_API opk_tolerance opk_default_tolerance(void);
/* Parses "0.3", "-0.2i", "0.3+0.2i" and similar. */
OPK_API opk_status opk_parse_complex(const char* text, double* re, double* im);

/* Operators ------------------------------------------------------------ */
OPK_API opk_status opk_operator_parse(const char* json, opk_operator** out);
OPK_API void opk_operator_free(opk_operator* op);
/* *dim = 0 for an operator on l^2(N). */
OPK_API opk_status opk_operator_ambient(const opk_operator* op, size_t* dim);
OPK_API opk_status opk_classify(const opk_operator* op, const opk_tolerance* tol,
                                opk_classification* out);

/* Analytic model ------------------------------------------------------- */
OPK_API opk_status opk_model_build(const opk_operator* op, const opk_tolerance* tol,
                                   opk_model** out);
OPK_API void opk_model_free(opk_model* m);
OPK_API opk_status opk_model_info(const opk_model* m, size_t* defect_dim, double* radius);
/* Writes dim E x dim E complex entries row-major as (re, im) pairs into
 * out, which must hold 2 * cap doubles; *dim receives dim E. */
OPK_API opk_status opk_model_kernel(const opk_model* m, double lambda_re, double lambda_im,
                                    double z_re, double z_im, const opk_tolerance* tol,
                                    double* out, size_t cap, size_t* dim);

/* Power series --------------------------------------------------------- */
OPK_API opk_status opk_series_multiplier(double t, size_t order, opk_series** out);
OPK_API opk_status opk_series_blaschke(const double* zeros_re_im, size_t count, size_t order,
                                       opk_series** out);
OPK_API opk_status opk_series_inner_symbol(const opk_series* phi, double t, size_t order,
                                           opk_series** out);
OPK_API void opk_series_free(opk_series* s);
OPK_API opk_status opk_series_order(const opk_series* s, size_t* order);
OPK_API opk_status opk_series_coeff(const opk_series* s, size_t k, double* re, double* im);

/* Reports (JSON text, deterministic) ------------------------------------ */
typedef struct opk_input {
  const char* name; /* shown in provenance */
  const char* text; /* JSON document */
} opk_input;

typedef struct opk_classify_request {
  opk_input op;
  const char* const* expect; /* class names, optionally "not_" prefixed */
  size_t expect_count;
} opk_classify_request;

typedef struct opk_semigroup_request {
  opk_input generator;
  const double* times;
  size_t time_count;
  int cogenerator;
  int growth_bound;
  int equivalence_suite;
  size_t samples;
} opk_semigroup_request;

enum {
  OPK_VERIFY_INTERTWINE = 1,
  OPK_VERIFY_REPRODUCE = 2,
  OPK_VERIFY_SEMIGROUP = 4
};

typedef struct opk_model_request {
  opk_input op;
  opk_input coeffs; /* text == NULL when absent */
  int has_kernel;
  double kernel[4]; /* lambda re, lambda im, z re, z im */
  int verify;       /* OPK_VERIFY_* bits */
  size_t order;
  double lambda[2];
  double t;
} opk_model_request;

typedef struct opk_hardy_request {
  const double* blaschke_re_im; /* NULL when absent */
  size_t blaschke_count;
  opk_input symbol; /* text == NULL when absent */
  int has_semigroup_t;
  double semigroup_t;
  int model_space;
  int has_ladder;
  size_t ladder;
  int caradus;
  size_t multiplicity; /* 0 when absent */
  size_t n;
  size_t order;
  int inner_check;
  size_t grid;
  int differentiation_scan;
  int has_composition;
  double composition_r;
} opk_hardy_request;

/* *passed receives 1 when every check in the report passed. */
OPK_API opk_status opk_report_classify(const opk_classify_request* req, const opk_tolerance* tol,
                                       char** json, int* passed);
OPK_API opk_status opk_report_semigroup(const opk_semigroup_request* req,
                                        const opk_tolerance* tol, char** json, int* passed);
OPK_API opk_status opk_report_model(const opk_model_request* req, const opk_tolerance* tol,
                                    char** json, int* passed);
OPK_API opk_status opk_report_hardy(const opk_hardy_request* req, const opk_tolerance* tol,
                                    char** json, int* passed);
/* fixture_dir == NULL selects the fixtures bundled with the build. */
OPK_API opk_status opk_verify_all(const opk_tolerance* tol, const char* fixture_dir, char** json,
                                  int* passed);

/* One summary line per acceptance criterion, newline separated. */
OPK_API opk_status opk_acceptance_summary(char** text, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* OPKIT_OPKIT_H */
