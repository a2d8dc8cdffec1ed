/* C interface to the double-power NLS laboratory.
 *
 * Usage: create a session, optionally load a config file and/or set
 * individual "section.key=value" options, then run one of the commands:
 *   groundstate, linops-audit, profile-build, law-integrate,
 *   evolve-validate, minimal-mass, defocusing-sanity, report
 * CSV artifacts land in the configured output directory; the human-readable
 * log of the last run (one line per run-level assertion) is available via
 * dpnls_last_output().
 */
#ifndef DPNLS_H
#define DPNLS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dpnls_session dpnls_session;

typedef enum {
  DPNLS_OK = 0,
  DPNLS_ERR_INVALID_ARG = 1, /* null handle / bad key syntax */
  DPNLS_ERR_CONFIG = 2,      /* unknown key, bad value, missing file */
  DPNLS_ERR_RUNTIME = 3,     /* solver failure (details in last_error) */
  DPNLS_ERR_ASSERTION = 4    /* command ran but a run-level check failed */
} dpnls_status;

dpnls_session* dpnls_session_create(void);
void dpnls_session_destroy(dpnls_session* s);

/* Stage a config file; values are resolved (and validated) at run time,
 * after all options have been applied.  Pass NULL to clear. */
dpnls_status dpnls_load_config(dpnls_session* s, const char* path);

/* Stage a single "section.key=value" override (applied after the file). */
dpnls_status dpnls_set_option(dpnls_session* s, const char* key_equals_value);

/* Resolve the staged configuration and execute one command. */
dpnls_status dpnls_run(dpnls_session* s, const char* command);

/* Log text of the last dpnls_run (empty until a run happens).
 * The pointer stays valid until the next call on the same session. */
const char* dpnls_last_output(const dpnls_session* s);

/* Message of the last error (empty if the last call succeeded). */
const char* dpnls_last_error(const dpnls_session* s);

/* The fully-resolved configuration in config-file syntax, or NULL if the
 * staged configuration does not validate (see dpnls_last_error). */
const char* dpnls_config_text(dpnls_session* s);

const char* dpnls_version(void);

#ifdef __cplusplus
}
#endif

#endif /* DPNLS_H */
