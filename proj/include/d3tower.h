/* Depth-three towers of group algebras: C interface. */
#ifndef D3TOWER_H
#define D3TOWER_H

#include <stddef.h>

#if defined(D3TOWER_BUILD)
#define D3_API __attribute__((visibility("default")))
#else
#define D3_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum d3_status {
  D3_OK = 0,
  D3_INVALID_INPUT,
  D3_PARSE_ERROR,
  D3_BAD_PERMUTATION,
  D3_CAP_EXCEEDED,
  D3_NOT_SUBGROUP,
  D3_DIMENSION_MISMATCH,
  D3_NOT_ALGEBRA_MAP,
  D3_NOT_BIMODULE,
  D3_NOT_BIMODULE_MAP,
  D3_TOWER_NOT_DEGENERATE,
  D3_CONDITION_FAILS,
  D3_VERIFICATION_FAILED,
  D3_ORACLE_INAPPLICABLE,
  D3_IDENTIFICATION_FAILURE,
  D3_NOT_RD3,
  D3_NOT_LEFT_D2,
  D3_NOT_RIGHT_D2,
  D3_IO_ERROR,
  D3_INTERNAL
} d3_status;

typedef struct d3_tower d3_tower;
typedef struct d3_report d3_report;

D3_API const char *d3_status_name(d3_status s);
/* Message of the last failing call on this thread; "" if none. */
D3_API const char *d3_last_error(void);
/* 1 for malformed specs, unreadable files and cap violations. */
D3_API int d3_is_input_error(d3_status s);

/* DEPTH_TOWER_CAP if set to a positive integer, else 128. */
D3_API size_t d3_default_cap(void);

D3_API d3_status d3_tower_parse(const char *json, d3_tower **out);
D3_API d3_status d3_tower_load(const char *path, d3_tower **out);
D3_API void d3_tower_free(d3_tower *t);

D3_API d3_status d3_check(const d3_tower *t, size_t cap, d3_report **out);
/* D3_NOT_RD3 when the tower has no right depth-three quasibasis. */
D3_API d3_status d3_structures(const d3_tower *t, size_t cap, d3_report **out);
/* field: "Q" or "Fp:p"; threads 0 picks the hardware count. */
D3_API d3_status d3_scan(size_t max_order, const char *field, size_t cap, unsigned threads, d3_report **out);

/* 1 when every verification in the report passed. */
D3_API int d3_report_ok(const d3_report *r);
/* Canonical JSON, owned by the report. */
D3_API const char *d3_report_json(const d3_report *r);
/* Tab-separated rows for scan reports, "" otherwise. */
D3_API const char *d3_report_tsv(const d3_report *r);
/* Re-checks every quasibasis embedded in a check report. */
D3_API d3_status d3_report_reverify(const char *json, size_t cap, int *ok);
D3_API void d3_report_free(d3_report *r);

#ifdef __cplusplus
}
#endif

#endif
