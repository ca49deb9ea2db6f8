#ifndef CHIRALG2_H
#define CHIRALG2_H

/* C interface to the chiralg2 solver.
 *
 * Frequencies and rates in cg2_params are nu/2pi in MHz. Sweep grids and the
 * values returned by the sweep accessors are in units of kappa. Every
 * function returns a cg2_status; on failure cg2_last_error() describes it. */

#include <stddef.h>

#if defined(CG2_BUILDING)
#define CG2_API __attribute__((visibility("default")))
#else
#define CG2_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg2_status {
  CG2_OK = 0,
  CG2_ERR_INVALID_ARGUMENT = 1,
  CG2_ERR_NONCONVERGENCE = 2,
  CG2_ERR_UNDEFINED = 3,
  CG2_ERR_NEAR_SINGULAR = 4,
  CG2_ERR_ANALYTIC_REGIME = 5,
  CG2_ERR_NO_PEAK = 6,
  CG2_ERR_STIFF = 7,
  CG2_ERR_INTERNAL = 8
} cg2_status;

typedef enum cg2_chirality { CG2_L = 0, CG2_R = 1 } cg2_chirality;

typedef enum cg2_axis { CG2_AXIS_OMEGA_31 = 0, CG2_AXIS_GAMMA_PHI = 1 } cg2_axis;

typedef enum cg2_call { CG2_CALL_L = 0, CG2_CALL_R = 1, CG2_CALL_INCONCLUSIVE = 2 } cg2_call;

typedef struct cg2_params {
  double delta_c;
  double delta_31;
  double delta_32;
  double g;
  double xi_p;
  double omega_31;
  double omega_32;
  double kappa;
  double gamma_21;
  double gamma_31;
  double gamma_32;
  double gamma_phi_21;
  double gamma_phi_31;
  double gamma_phi_32;
  double phi; /* radians */
  int n_c;
  /* Nonzero: delta_31 = delta_c and delta_32 = 0, ignoring the fields above. */
  int resonant;
} cg2_params;

typedef struct cg2_point {
  double g2;
  int has_g2;
  double g2_analytic;
  int has_g2_analytic;
  double p11;
  double p12;
  double nbar;
  double residual;
  double min_eigenvalue;
} cg2_point;

/* Arrays are indexed by cg2_chirality. */
typedef struct cg2_record {
  double g2_numeric[2];
  int has_g2_numeric[2];
  double g2_analytic[2];
  int has_g2_analytic[2];
  double p11[2];
  double p12[2];
  double nbar[2];
  double residual[2];
  int flagged;
} cg2_record;

typedef struct cg2_verdict {
  cg2_call call;
  double margin;
  double g2_L;
  double g2_R;
} cg2_verdict;

typedef struct cg2_sweep cg2_sweep;

typedef void (*cg2_check_callback)(const char* name, int passed, const char* detail, void* user);

CG2_API const char* cg2_version(void);

/* Message for the last failing call on this thread; "" if none. */
CG2_API const char* cg2_last_error(void);

/* Defaults at delta_c = 0 with resonant = 1. */
CG2_API void cg2_params_default(cg2_params* out);

/* Numeric steady state for one chirality. The analytic value is filled when
 * every dephasing rate is zero and the weak-driving formula is defined. */
CG2_API cg2_status cg2_solve_point(const cg2_params* p, cg2_chirality ch, cg2_point* out);

/* The delta_c field of p is ignored; each grid point applies resonant
 * detuning. threads <= 0 uses every hardware thread. */
CG2_API cg2_status cg2_sweep_detuning(const cg2_params* p, const double* dc_over_kappa,
                                      size_t n, int include_analytic, int threads,
                                      cg2_sweep** out);

CG2_API cg2_status cg2_sweep_2d(const cg2_params* p, const double* dc_over_kappa, size_t n1,
                                cg2_axis axis, const double* axis_over_kappa, size_t n2,
                                int threads, cg2_sweep** out);

CG2_API void cg2_sweep_free(cg2_sweep* s);

CG2_API int cg2_sweep_is_2d(const cg2_sweep* s);

/* axis is 0 (delta_c) or 1 (second axis of a map). */
CG2_API size_t cg2_sweep_axis_size(const cg2_sweep* s, int axis);
CG2_API const char* cg2_sweep_axis_name(const cg2_sweep* s, int axis);
CG2_API double cg2_sweep_axis_value(const cg2_sweep* s, int axis, size_t i);

/* Records are ordered with the second axis slow: index = i2 * n1 + i1. */
CG2_API size_t cg2_sweep_size(const cg2_sweep* s);
CG2_API size_t cg2_sweep_flagged_count(const cg2_sweep* s);
CG2_API cg2_status cg2_sweep_record(const cg2_sweep* s, size_t index, cg2_record* out);

CG2_API cg2_status cg2_sweep_locate_peak(const cg2_sweep* s, cg2_chirality ch,
                                         double* dc_over_kappa, double* g2);
CG2_API cg2_status cg2_sweep_nearest_p11_dip(const cg2_sweep* s, cg2_chirality ch,
                                             double dc_over_kappa, double* dip_over_kappa);

/* p is used as given (resonant honored). */
CG2_API cg2_status cg2_discriminate(const cg2_params* p, double g2_measured,
                                    double min_log10_separation, cg2_verdict* out);

/* count evenly spaced values from first to last; symmetric ranges come out
 * exactly antisymmetric. */
CG2_API cg2_status cg2_linspace(double first, double last, size_t count, double* out);

/* Runs the invariant suite; cb may be NULL. */
CG2_API cg2_status cg2_selftest(cg2_check_callback cb, void* user, int* failed);

#ifdef __cplusplus
}
#endif

#endif
