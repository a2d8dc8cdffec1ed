// Exercises the shared-library C interface end to end (no core headers).
#include <stdio.h>
#include <string.h>

#include "dpnls.h"

static int failures = 0;
#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      ++failures;                                                 \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
    }                                                             \
  } while (0)

int main(void) {
  CHECK(strcmp(dpnls_version(), "") != 0);

  dpnls_session* s = dpnls_session_create();
  CHECK(s != NULL);

  /* option staging and validation */
  CHECK(dpnls_set_option(s, "problem.d") == DPNLS_ERR_INVALID_ARG);
  CHECK(dpnls_set_option(s, "problem.d=2") == DPNLS_OK);
  CHECK(dpnls_set_option(s, "problem.p=2.5") == DPNLS_OK);
  const char* txt = dpnls_config_text(s);
  CHECK(txt != NULL);
  CHECK(strstr(txt, "d = 2") != NULL);
  CHECK(strstr(txt, "[problem]") != NULL);

  /* unknown key surfaces as a config error at resolution time */
  CHECK(dpnls_set_option(s, "problem.zz=1") == DPNLS_OK);
  CHECK(dpnls_run(s, "report") == DPNLS_ERR_CONFIG);
  CHECK(strstr(dpnls_last_error(s), "unknown config key") != NULL);
  dpnls_session_destroy(s);

  /* a real (cheap) run through the API */
  s = dpnls_session_create();
  CHECK(dpnls_set_option(s, "grid.Ny=1024") == DPNLS_OK);
  CHECK(dpnls_set_option(s, "output.dir=/tmp/dpnls_capi_out") == DPNLS_OK);
  dpnls_status st = dpnls_run(s, "law-integrate");
  if (st != DPNLS_OK) fprintf(stderr, "law-integrate: %s\n", dpnls_last_error(s));
  CHECK(st == DPNLS_OK);
  CHECK(strstr(dpnls_last_output(s), "PASS") != NULL);
  CHECK(strstr(dpnls_last_output(s), "FAIL") == NULL);

  /* unknown command */
  CHECK(dpnls_run(s, "frobnicate") == DPNLS_ERR_RUNTIME);
  CHECK(strlen(dpnls_last_error(s)) > 0);

  /* missing config file */
  CHECK(dpnls_load_config(s, "/no/such/file.cfg") == DPNLS_OK);
  CHECK(dpnls_run(s, "report") == DPNLS_ERR_CONFIG);

  dpnls_session_destroy(s);
  dpnls_session_destroy(NULL); /* must be a no-op */

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
