/*
 * qmv — mutual-visibility machinery for hypercubes, C API.
 *
 * Vertices of Q_n are 64-bit words: ground-set element i (1-based) is bit
 * i-1. Every function returns a qmv_rc; on failure qmv_last_error() holds a
 * thread-local description. Structured results are returned either as an
 * opaque handle (cube colorings) or as a heap-allocated JSON record string
 * that the caller releases with qmv_string_free().
 *
 * Machine records are single-line JSON objects with a "schema" field and
 * deterministic serialization: identical inputs yield identical bytes.
 */

#ifndef QMV_H
#define QMV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qmv_rc {
  QMV_OK = 0,
  QMV_ERR_ARG = 1,         /* bad parameters, dimension mismatch, malformed input */
  QMV_ERR_BUDGET = 2,      /* desk-scale cap exceeded without the unsafe override */
  QMV_ERR_CONVERGENCE = 3, /* resampling exhausted max_rounds */
  QMV_ERR_IO = 4,          /* file read/write/parse failure */
  QMV_ERR_INTERNAL = 5     /* broken invariant; indicates a bug */
} qmv_rc;

/* Library version string, e.g. "0.1.0". Static storage; do not free. */
const char* qmv_version(void);

/* Description of the most recent failure on this thread. Static storage. */
const char* qmv_last_error(void);

/* Releases strings returned through char** out-parameters. */
void qmv_string_free(char* s);

/* Releases vertex arrays returned through uint64_t** out-parameters. */
void qmv_words_free(uint64_t* words);

/* ----- subset-lattice basics ----- */

/* Hamming/geodesic distance |a xor b| in Q_n. */
qmv_rc qmv_distance(uint32_t n, uint64_t a, uint64_t b, uint32_t* out);

/* All C(n,k) k-subsets of [n] in colex order. */
qmv_rc qmv_enumerate_layer(uint32_t n, uint32_t k, int unsafe, uint64_t** words_out,
                           uint64_t* count_out);

/* ----- visibility ----- */

/*
 * Geodesic visibility of a and b past the obstacle set (endpoints are never
 * treated as obstacles). record_out (optional) receives a qmv.visibility/1
 * certificate; when visible it includes one witnessing path.
 */
qmv_rc qmv_visible(uint32_t n, uint64_t a, uint64_t b, const uint64_t* obstacles,
                   uint64_t obstacle_count, int unsafe, int* visible_out, char** record_out);

/*
 * Mutual-visibility verdict for a vertex set. record_out (optional) receives
 * a qmv.set_check/1 record with the first failing pair when the check fails.
 */
qmv_rc qmv_check_set(uint32_t n, const uint64_t* vertices, uint64_t count, uint32_t jobs,
                     int unsafe, int* is_mv_out, char** record_out);

/*
 * Searches interval subcubes of dimension 2..max_dim for three layers fully
 * contained in the given set. found_out = 1 and a qmv.obstruction/1 record
 * when a witness exists.
 */
qmv_rc qmv_find_obstruction(uint32_t n, const uint64_t* vertices, uint64_t count,
                            uint32_t max_dim, int unsafe, int* found_out, char** record_out);

/* ----- cube colorings ----- */

typedef struct qmv_coloring qmv_coloring; /* opaque */

void qmv_coloring_free(qmv_coloring* c);

/*
 * Builds a full coloring of V(Q_n): boundary layers single-class, middle
 * layers 2-colored by seeded resampling until no block is monochromatic,
 * assembled into at most g*q classes. q must be 2. max_rounds = 0 selects
 * the default. reports_out (optional) receives one qmv.layer_report/1 line
 * per layer.
 */
qmv_rc qmv_color_cube(uint32_t n, uint32_t g, uint32_t q, uint64_t seed, uint64_t max_rounds,
                      uint32_t jobs, int unsafe, qmv_coloring** out, char** reports_out);

uint32_t qmv_coloring_n(const qmv_coloring* c);
uint32_t qmv_coloring_class_count(const qmv_coloring* c);
uint32_t qmv_coloring_class_of(const qmv_coloring* c, uint64_t vertex);

/* qmv.coloring/1 record (one line, no trailing newline). */
qmv_rc qmv_coloring_to_json(const qmv_coloring* c, char** json_out);
qmv_rc qmv_coloring_from_json(const char* json, qmv_coloring** out);
qmv_rc qmv_coloring_read_file(const char* path, qmv_coloring** out);
qmv_rc qmv_coloring_write_file(const qmv_coloring* c, const char* path);

/*
 * Full pairwise verification that every class is a mutual-visibility set.
 * ok_out = 1 iff all classes pass; record_out (optional) receives a
 * qmv.verify/1 record with per-class verdicts and witnesses.
 */
qmv_rc qmv_verify_coloring(const qmv_coloring* c, uint32_t jobs, int unsafe, int* ok_out,
                           char** record_out);

/* ----- per-layer construction and local-lemma arithmetic ----- */

/*
 * qmv.lll_report/1 record: p = 2^(1-C(2g,g)), d = C(2g,g)C(k,g)C(n-k,g),
 * criterion e*p*(d+1) and whether it is <= 1. Requires g <= k <= n-g.
 */
qmv_rc qmv_lll_report(uint32_t n, uint32_t k, uint32_t g, char** record_out);

/*
 * One layer colored by seeded resampling (all-ones single class for
 * boundary k). Returns a qmv.layer_coloring/1 record.
 */
qmv_rc qmv_layer_coloring(uint32_t n, uint32_t k, uint32_t g, uint64_t seed,
                          uint64_t max_rounds, int unsafe, char** record_out);

/* ----- exact solvers ----- */

/* qmv.mu/1 record: exact for n <= 4, budgeted best-found beyond. */
qmv_rc qmv_exact_mu(uint32_t n, int unsafe, char** record_out);

/* qmv.chi/1 record with a certifying partition. */
qmv_rc qmv_exact_chi(uint32_t n, int unsafe, char** record_out);

/* ----- set files ----- */

/*
 * Parses a set file (one vertex per line: hex word or element list; '#'
 * comments). n_hint = 0 infers the dimension from the largest element.
 */
qmv_rc qmv_read_set_file(const char* path, uint32_t n_hint, uint32_t* n_out,
                         uint64_t** words_out, uint64_t* count_out);

#ifdef __cplusplus
}
#endif

#endif /* QMV_H */
