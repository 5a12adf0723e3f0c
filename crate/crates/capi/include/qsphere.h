/* C ABI for the qsphere exact symbolic engine.
 *
 * Kept in sync by hand with crates/capi/src/lib.rs; the smoke tests exercise
 * every declaration below through the Rust definitions.
 *
 * Conventions:
 *   - QsEngine is an opaque handle; create with qs_engine_new, release with
 *     qs_engine_free. A handle may be shared across threads.
 *   - Expressions are NUL-terminated UTF-8 strings in the DSL of the engine
 *     (e.g. "q^-1*z1 z2", "r[0,0,0]", "z1 z4* - z2 z3*").
 *   - Output strings are allocated by the library; release them with
 *     qs_string_free.
 *   - Every function returns a QS_* status code; on failure,
 *     qs_engine_last_error returns a message valid until the next call
 *     through the same handle.
 */

#ifndef QSPHERE_H
#define QSPHERE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct QsEngine QsEngine;

/* Status codes. */
enum {
    QS_OK = 0,
    QS_NULL_ARGUMENT = 1,
    QS_INVALID_UTF8 = 2,
    QS_PARSE_ERROR = 3,
    QS_DEGREE_CAP = 4,
    QS_SUITE_FAILED = 5,
    QS_BAD_ARGUMENT = 6,
    QS_INTERNAL = 7
};

/* Expression contexts. */
enum {
    QS_CONTEXT_P = 0,   /* the 7-sphere algebra, generators z1..z4, z1*..z4* */
    QS_CONTEXT_SU2 = 1, /* the quantum SU(2) block, generators a b c d */
    QS_CONTEXT_C = 2    /* the quotient coalgebra, basis r[k,m,n] */
};

/* Create an engine; degree_cap bounds the letter count of any computation
 * (pass 0 for the default of 24). */
QsEngine *qs_engine_new(size_t degree_cap);

void qs_engine_free(QsEngine *engine);

/* Last error message recorded on the handle, or NULL. */
const char *qs_engine_last_error(const QsEngine *engine);

void qs_string_free(char *s);

/* Canonical normal form of an expression in the given context. */
int qs_nf(QsEngine *engine, int context, const char *src, char **out);

/* Right coaction of the quotient coalgebra on an element of P. */
int qs_delta_r(QsEngine *engine, const char *src, char **out);

/* Canonical map applied to the representative left (x) right. */
int qs_chi(QsEngine *engine, const char *left, const char *right, char **out);

/* Translation map on the basis element r[k,m,n]; memoized in the engine. */
int qs_tau(QsEngine *engine, int64_t k, uint32_t m, uint32_t n, char **out);

/* Run a verification suite ("S1".."S8"). QS_OK when all cases pass,
 * QS_SUITE_FAILED when the suite ran but found a counterexample. The report
 * text is returned either way. */
int qs_run_suite(QsEngine *engine, const char *suite, uint32_t max_degree,
                 uint64_t seed, char **out_report);

/* Library version. */
const char *qs_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QSPHERE_H */
