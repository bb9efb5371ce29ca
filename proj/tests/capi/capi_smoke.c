#include <sextic/sextic.h>

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

int main(void) {
  sextic_context* ctx = NULL;
  EXPECT(sextic_context_create(0, &ctx) == SEXTIC_OK);
  EXPECT(sextic_get_precision(ctx) == 256);
  EXPECT(sextic_set_precision(ctx, 3) == SEXTIC_BAD_INPUT);
  EXPECT(sextic_get_precision(ctx) == 256);

  sextic_result* r = NULL;
  EXPECT(sextic_run(ctx, "qes", "{\"nu\": 7, \"ell\": 0, \"eps\": -1}", &r) == SEXTIC_OK);
  EXPECT(r != NULL);
  EXPECT(strstr(sextic_result_json(r), "\"M\": 2") != NULL);
  sextic_result_destroy(r);

  r = NULL;
  EXPECT(sextic_run(ctx, "qes", "{\"nu\": 2, \"eps\": -1}", &r) == SEXTIC_NO_SOLUTIONS);
  EXPECT(strstr(sextic_result_message(r), "M not a positive integer") != NULL);
  EXPECT(strlen(sextic_last_error(ctx)) > 0);
  sextic_result_destroy(r);

  r = NULL;
  EXPECT(sextic_run(ctx, "qes", "{nu: 7", &r) == SEXTIC_BAD_INPUT);
  sextic_result_destroy(r);

  r = NULL;
  EXPECT(sextic_run(ctx, "nonsense", "{}", &r) == SEXTIC_BAD_INPUT);
  sextic_result_destroy(r);

  EXPECT(sextic_run(NULL, "qes", "{}", &r) == SEXTIC_BAD_INPUT);
  EXPECT(strcmp(sextic_status_string(SEXTIC_COLLISION), "collision") == 0);

  /* Lower precision still gives the nu = 7 spectrum. */
  EXPECT(sextic_set_precision(ctx, 128) == SEXTIC_OK);
  r = NULL;
  EXPECT(sextic_run(ctx, "qes", "{\"nu\": 7}", &r) == SEXTIC_OK);
  EXPECT(strstr(sextic_result_json(r), "\"M\": 2") != NULL);
  sextic_result_destroy(r);

  sextic_context_destroy(ctx);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}
