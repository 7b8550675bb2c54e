/*
 * C interface to the orbital-integral library.  All functions return an
 * orb_status; results come back through out-parameters.  Strings returned
 * through char** are heap-allocated and must be released with
 * orb_string_free.  Handles are opaque and must be released with the
 * matching *_free.  On any non-OK status, orb_last_error() describes the
 * failure for the calling thread.
 */
#ifndef ORBITAL_H
#define ORBITAL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orb_status {
  ORB_OK = 0,
  ORB_INTERNAL = 1,
  ORB_NOT_ELLIPTIC = 2,
  ORB_WITNESS_NOT_FOUND = 3,
  ORB_BAD_INPUT = 4,
  ORB_CHARACTERISTIC_UNSUPPORTED = 5,
  ORB_MISMATCH = 6,
  ORB_BUDGET_EXCEEDED = 7,
  ORB_DEGENERATE_INPUT = 8,
  ORB_NOT_INTEGRAL = 9,
  ORB_PRECISION_TOO_LOW = 10,
  ORB_PARITY_VIOLATION = 11,
  ORB_PROVISO_UNVERIFIED = 12,
  ORB_WINDOW_UNSTABLE = 13,
  ORB_INTERNAL_CASE_GAP = 14
} orb_status;

typedef struct orb_field orb_field;
typedef struct orb_charpoly orb_charpoly;
typedef struct orb_profile orb_profile;
typedef struct orb_qvalue orb_qvalue;

const char* orb_version(void);
/* Thread-local message for the most recent failing call. */
const char* orb_last_error(void);
void orb_string_free(char* s);

/* kind: "p-adic" or "laurent"; p must be prime. */
orb_status orb_field_new(const char* kind, unsigned p, orb_field** out);
void orb_field_free(orb_field* f);

/* coeffs: n strings c_1..c_n.  p-adic: decimal integers.  laurent:
 * comma-separated residue lists, lowest t-power first (e.g. "0,1" is t). */
orb_status orb_charpoly_new(const orb_field* f, int n, const char* const* coeffs,
                            orb_charpoly** out);
void orb_charpoly_free(orb_charpoly* c);
orb_status orb_charpoly_disc_valuation(const orb_charpoly* c, long long* out);

orb_status orb_profile_build(const orb_charpoly* c, orb_profile** out);
/* Synthetic profile for formula exploration; ram: "unramified"/"ramified";
 * q = 0 keeps q symbolic. */
orb_status orb_profile_abstract(int n, long long d, const char* ram, long long S, unsigned q,
                                orb_profile** out);
void orb_profile_free(orb_profile* p);
/* keys: n, q, d, delta_ord, S, d_prime, epsilon, witness_da, ram (0/1) */
orb_status orb_profile_get(const orb_profile* p, const char* key, long long* out);
orb_status orb_profile_json(const orb_profile* p, char** out);

orb_status orb_so_mn(const orb_profile* p, orb_qvalue** out);
orb_status orb_so_geometric(const orb_profile* p, const long long* k, int nk, orb_qvalue** out);
orb_status orb_so_quotient(const orb_profile* p, const long long* k, int nk, orb_qvalue** out);
orb_status orb_conversion_factor(const orb_profile* p, orb_qvalue** out);
orb_status orb_stratification_sum(const orb_profile* p, orb_qvalue** out);
orb_status orb_derive_case3(const orb_profile* p, long long k1, orb_qvalue** out);
orb_status orb_count_lattices(int n, const long long* k, int nk, orb_qvalue** out);

void orb_qvalue_free(orb_qvalue* v);
orb_status orb_qvalue_str(const orb_qvalue* v, char** out);
/* Exact rational "num/den" at a concrete q (decimal string). */
orb_status orb_qvalue_eval(const orb_qvalue* v, const char* q_decimal, char** out);
int orb_qvalue_equal(const orb_qvalue* a, const orb_qvalue* b);

/* Brute-force fiber volume over o/pi^N; JSON report with count, volume,
 * stabilized flag.  jobs <= 0 means one worker. */
orb_status orb_fiber_volume(const orb_charpoly* c, const long long* k, int nk, unsigned N,
                            int jobs, char** out_json);
orb_status orb_lattice_orbit_count(const orb_charpoly* c, const long long* k, int nk, int window,
                                   long long* out);

/* Command-level entry points; case_json is the case-file text.  format:
 * "json", "text" or "csv". */
orb_status orb_cmd_analyze(const char* case_json, const char* id, const char* format, char** out);
/* k_csv: optional "k1,k2[,k3]" override; measure: optional
 * geometric/quotient/both. */
orb_status orb_cmd_eval(const char* case_json, const char* id, const char* k_csv,
                        const char* measure, const char* format, char** out);
/* Table over all admissible types of either a case file or an abstract
 * profile (pass NULL for the unused one). */
orb_status orb_cmd_table(const char* case_json, const orb_profile* p, long long k1_min,
                         const char* format, char** out);
/* precision: NULL/"auto" or a decimal N.  Returns ORB_MISMATCH when some
 * oracle comparison fails (out still carries the report). */
orb_status orb_cmd_verify(const char* case_json, const char* id, const char* precision, int jobs,
                          const char* format, char** out);
/* Returns ORB_MISMATCH when some case diverges from its golden record. */
orb_status orb_cmd_corpus_run(const char* dir, int jobs, int write_golden, char** out_summary,
                              char** out_timing);

#ifdef __cplusplus
}
#endif

#endif /* ORBITAL_H */
