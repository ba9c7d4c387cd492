/* C interface to the spin-chain verification library.
 *
 * Usage pattern:
 *   ik_session* s = ik_session_new();
 *   ik_session_load_config_file(s, "run.cfg");     (optional)
 *   ik_session_set_option(s, "seed", "42");        (optional overrides)
 *   ik_status st = ik_session_run(s);
 *   puts(ik_session_summary(s));
 *   ik_session_free(s);
 *
 * All returned strings are owned by the session (or are static) and stay
 * valid until the next call on the same session, or ik_session_free.
 * Sessions are not thread-safe; use one session per thread.
 */
#ifndef IK_H
#define IK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ik_session ik_session;

typedef enum {
  IK_OK = 0,
  /* at least one check case exceeded its tolerance */
  IK_SUITE_FAILURE = 1,
  /* malformed config text, unknown key/suite, bad value */
  IK_ERR_CONFIG = 2,
  /* inhomogeneities collide under the shift lattice */
  IK_ERR_DEGENERATE = 3,
  /* requested chain length exceeds the dense-operator limit */
  IK_ERR_SIZE = 4,
  /* a formula denominator or transfer inverse is near-singular */
  IK_ERR_SINGULAR = 5,
  /* the Bethe root solver did not converge from any guess */
  IK_ERR_NO_CONVERGENCE = 6,
  /* site or matrix-unit index out of range */
  IK_ERR_INDEX = 7,
  /* could not read the config or write a report */
  IK_ERR_IO = 8,
  /* null pointer or otherwise unusable argument */
  IK_ERR_ARGUMENT = 9,
  IK_ERR_INTERNAL = 10
} ik_status;

const char* ik_version(void);
const char* ik_status_name(ik_status status);

ik_session* ik_session_new(void);
void ik_session_free(ik_session* session);

/* Config files and inline text use the same line-oriented key:value tree
 * format as the reports. Recognized top-level keys: eta, n_sites, theta,
 * seed, tolerance, suites, output. Loading replaces the whole config. */
ik_status ik_session_load_config_file(ik_session* session, const char* path);
ik_status ik_session_load_config_text(ik_session* session, const char* text);

/* Point overrides on top of the loaded (or default) config. Keys:
 *   seed        unsigned integer
 *   tolerance   real; replaces every per-case default
 *   n_sites     1..5; discards any configured theta list (defaults refill)
 *   eta         "[re, im]" or "re,im"
 *   output      report directory ("" disables file output)
 *   suites      comma-separated registry names
 */
ik_status ik_session_set_option(ik_session* session, const char* key,
                                const char* value);

/* Runs the configured suites in declared order. Returns IK_OK when every
 * case passes, IK_SUITE_FAILURE when any fails, or an error status if the
 * config is unusable. When an output directory is configured, writes one
 * report file per suite plus summary.txt. */
ik_status ik_session_run(ik_session* session);

/* Post-run accessors. Counts are 0 before the first run. */
int ik_session_suites_run(const ik_session* session);
int ik_session_cases_failed(const ik_session* session);
/* Full summary tree as text. */
const char* ik_session_summary(const ik_session* session);
/* Report text for one executed suite, or NULL when it was not run. */
const char* ik_session_report(const ik_session* session, const char* suite);
/* Message for the most recent non-OK status ("" when none). */
const char* ik_session_last_error(const ik_session* session);

/* Fixed suite registry. */
int ik_suite_count(void);
const char* ik_suite_name(int index); /* NULL out of range */
const char* ik_suite_describe(const char* name); /* NULL if unknown */

#ifdef __cplusplus
}
#endif

#endif /* IK_H */
