/* chebmod: fixed-point counts, exact-period spectra and lift classification
 * for Chebyshev polynomial maps T_n on Z/p^kZ (p an odd prime).
 *
 * C API of the shared library. All computations are exposed through opaque
 * handles; results are UTF-8 JSON documents with a stable schema (see
 * README.md). Every entry point returns a chebmod_status; on failure the
 * out-parameter is left untouched and a thread-local message is available
 * via chebmod_last_error().
 */
#ifndef CHEBMOD_H
#define CHEBMOD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chebmod_status {
    CHEBMOD_OK = 0,
    /* A verification sweep found closed-form/oracle disagreements (the
     * report in the result handle lists them), or an internal invariant
     * failed. */
    CHEBMOD_ERR_DISCREPANCY = 1,
    /* Invalid input: bad prime, residue out of range, non-periodic point
     * where a periodic one is required, and similar domain violations. */
    CHEBMOD_ERR_INVALID_ARGUMENT = 2,
    /* A closed-form count was requested for p = 3 at level k >= 3, where no
     * closed form exists; rerun with enumeration enabled. */
    CHEBMOD_ERR_UNSUPPORTED_P3_LEVEL = 3,
    /* An enumeration, factorization or order search exceeded its budget. */
    CHEBMOD_ERR_BUDGET_EXCEEDED = 4,
    /* A p-adic probe could not certify its answer at the working precision. */
    CHEBMOD_ERR_INSUFFICIENT_PRECISION = 5
} chebmod_status;

/* Library version string, e.g. "0.1.0". */
const char* chebmod_version(void);

/* Stable name for a status value. */
const char* chebmod_status_name(chebmod_status status);

/* Message describing the most recent failure on this thread ("" if none). */
const char* chebmod_last_error(void);

/* ------------------------------------------------------------------ */
/* Results: opaque handles owning a JSON document.                     */

typedef struct chebmod_result chebmod_result;

chebmod_status chebmod_result_status(const chebmod_result* result);
/* The result document: JSON for every command except DOT graph renders,
 * which yield DOT text. Borrowed pointer, valid until chebmod_result_free. */
const char* chebmod_result_payload(const chebmod_result* result);
void chebmod_result_free(chebmod_result* result);

/* ------------------------------------------------------------------ */
/* Commands. A zero oracle_budget means "default" (2^22 nodes, or the  */
/* CHEBMOD_ORACLE_BUDGET environment variable if set).                 */

/* Fixed-point counts of T_n on Z/p^kZ for levels 1..k, with the formula
 * ingredients (four gcds, delta, degenerate class count d, s = v_p(n^2-1)).
 * with_enumeration != 0 additionally brute-forces the fixed set at level k,
 * includes it in the result, and fills levels that have no closed form
 * (p = 3, k >= 3) from the oracle instead of failing. */
chebmod_status chebmod_fixed(uint64_t p, uint64_t n, uint32_t k,
                             int with_enumeration, uint64_t oracle_budget,
                             chebmod_result** out);

/* Exact-period spectrum of T_n on Z/p^kZ. orbitwise != 0 (k = 2, p not
 * dividing n only) adds the per-source-order first-lift breakdown and
 * cross-checks it against the spectrum. */
chebmod_status chebmod_spectrum(uint64_t p, uint64_t n, uint32_t k, int orbitwise,
                                uint64_t oracle_budget, chebmod_result** out);

/* First-lift fate of the periodic residue a0 mod p under T_n: either all p
 * lifts retain the period, or one Hensel lift retains it and p - 1 ghosts
 * move to the longer period kappa. */
chebmod_status chebmod_ghost(uint64_t p, uint64_t n, uint64_t a0,
                             chebmod_result** out);

/* Partition of the p^(k-1) lifts of a0 by exact period (p >= 5), with the
 * cord tower, layer counts, and cycle counts above the base orbit. */
chebmod_status chebmod_tower(uint64_t p, uint64_t n, uint64_t a0, uint32_t k,
                             chebmod_result** out);

/* Closed-form vs brute-force sweep over odd primes p <= pmax, degrees
 * 1..nmax, levels 1..kmax. Returns CHEBMOD_OK and a report when everything
 * agrees; CHEBMOD_ERR_DISCREPANCY with the full report (listing every
 * disagreement) when it does not. threads = 0 uses all hardware threads. */
chebmod_status chebmod_verify(uint64_t pmax, uint64_t nmax, uint32_t kmax,
                              uint64_t oracle_budget, uint32_t threads,
                              chebmod_result** out);

/* ------------------------------------------------------------------ */
/* Functional graphs: opaque handle over the successor map x -> T_n(x) */
/* on Z/p^kZ with its cycle decomposition.                             */

typedef struct chebmod_graph chebmod_graph;

chebmod_status chebmod_graph_build(uint64_t p, uint64_t n, uint32_t k,
                                   uint64_t oracle_budget, chebmod_graph** out);
uint64_t chebmod_graph_size(const chebmod_graph* graph);
uint64_t chebmod_graph_successor(const chebmod_graph* graph, uint64_t x);
/* 1 if x lies on a cycle, else 0. */
int chebmod_graph_is_periodic(const chebmod_graph* graph, uint64_t x);
/* Exact period of x (its cycle length), or 0 if x is a tail node. */
uint64_t chebmod_graph_period(const chebmod_graph* graph, uint64_t x);

#define CHEBMOD_GRAPH_FORMAT_DOT 0
#define CHEBMOD_GRAPH_FORMAT_JSON 1
chebmod_status chebmod_graph_render(const chebmod_graph* graph, int format,
                                    chebmod_result** out);
void chebmod_graph_free(chebmod_graph* graph);

#ifdef __cplusplus
}
#endif

#endif /* CHEBMOD_H */
