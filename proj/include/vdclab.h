/* C API for the vdclab core: opaque handles, integer status codes, JSON
 * reports. Every function that can fail records a thread-local status and
 * message retrievable via vdc_last_status / vdc_last_message; handle-returning
 * functions return NULL on failure, status-returning functions return the
 * status directly. */
#ifndef VDCLAB_H
#define VDCLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vdc_status {
  VDC_OK = 0,
  VDC_E_INVALID = 1,         /* bad argument or malformed input */
  VDC_E_COVERAGE = 2,        /* window does not cover a needed point */
  VDC_E_DOMAIN = 3,          /* values outside the tagged domain */
  VDC_E_SCHEDULE = 4,        /* thresholds/horizon incompatible */
  VDC_E_RATIONALIZATION = 5, /* weights not rationalizable in budget */
  VDC_E_CONVERGENCE = 6,     /* Monte Carlo cap exceeded */
  VDC_E_GEOMETRY = 7,        /* value outside a convex hull */
  VDC_E_ALIAS = 8,           /* frequency aliases to 0 on the grid */
  VDC_E_SOLVER = 9,          /* LP iteration cap / unbounded */
  VDC_E_WITNESS = 10,        /* witnesses cannot meet tolerance */
  VDC_E_UNKNOWN_CASE = 11,   /* casebook name not in the catalogue */
  VDC_E_IO = 12,             /* file missing or unreadable */
  VDC_E_INTERNAL = 13
} vdc_status;

typedef struct vdc_window vdc_window;
typedef struct vdc_spec vdc_spec;
typedef struct vdc_mps vdc_mps;
typedef struct vdc_report vdc_report;

vdc_status vdc_last_status(void);
const char* vdc_last_message(void);

/* ---- windows ------------------------------------------------------- */
/* Reads .csv (coords,re,im rows) or .json by extension. */
vdc_window* vdc_window_read(const char* path);
vdc_status vdc_window_write_csv(const vdc_window* w, const char* path);
/* iid uniform unimodular values on [0, side)^dim. */
vdc_window* vdc_window_white_noise(int dim, int64_t side, uint64_t seed);
int64_t vdc_window_site_count(const vdc_window* w);
void vdc_window_free(vdc_window* w);

/* ---- inputs ---------------------------------------------------------- */
vdc_spec* vdc_spec_read(const char* path);
void vdc_spec_free(vdc_spec* s);
vdc_mps* vdc_mps_read(const char* path);
void vdc_mps_free(vdc_mps* m);

/* ---- reports --------------------------------------------------------- */
/* Owned by the report; valid until vdc_report_free. */
const char* vdc_report_json(const vdc_report* r);
/* 1 = pass, 0 = fail. */
int vdc_report_pass(const vdc_report* r);
void vdc_report_free(vdc_report* r);

/* ---- operations ------------------------------------------------------ */

/* Correlation synthesis. Witnesses come from the system when `source` is
 * non-NULL, else from an iid Bernoulli(iid_p) source (iid_p in [0,1]).
 * horizon must be a power of two. Writes the window CSV to out_csv when
 * non-NULL. */
vdc_report* vdc_synthesize(const vdc_spec* spec, const vdc_mps* source, double iid_p,
                           int64_t horizon, uint64_t seed, double epsilon, const char* out_csv);

/* Inverse correspondence. families: ';'-separated families, each a comma
 * list of shifts (`h` or `(a,b)`; prefix `~` complements the term), with an
 * optional `u:` prefix for union semantics, e.g. "0,1;u:0,1,2;0,~3".
 * semigroup != 0 restricts to {1,2,...} (dim-1 systems only). Writes A as a
 * point CSV to out_csv when non-NULL. */
vdc_report* vdc_ifc(const vdc_mps* source, double iid_p, const char* families, int64_t horizon,
                    uint64_t seed, double epsilon, int semigroup, const char* out_csv);

/* Weyl uniform-distribution test over the window's full region. */
vdc_report* vdc_weyl(const vdc_window* w, int l_max, double tol);

/* Spectral evidence. set_expr: "finite:1,2,3" | "squares:<=K" | "file:PATH".
 * steps = number of truncation steps. */
vdc_report* vdc_spectral(const char* set_expr, int grid, int steps, double threshold);

/* White-noise battery: `entries` default multi-shift correlation entries on
 * a fresh window of n sites; pass iff every statistic is within the 3/sqrt(n)
 * envelope and the stated tol. */
vdc_report* vdc_whitenoise(int64_t n, uint64_t seed, int entries, double tol, const char* out_csv);

/* Casebook. name = catalogue entry or "all"; params_json optional. */
vdc_report* vdc_casebook_run(const char* name, const char* params_json, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* VDCLAB_H */
