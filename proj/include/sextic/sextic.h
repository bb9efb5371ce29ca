#ifndef SEXTIC_SEXTIC_H
#define SEXTIC_SEXTIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(SEXTIC_BUILDING_LIBRARY)
#define SEXTIC_API __attribute__((visibility("default")))
#else
#define SEXTIC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sextic_context sextic_context;
typedef struct sextic_result sextic_result;

/* Values double as CLI exit codes. */
typedef enum sextic_status {
  SEXTIC_OK = 0,
  SEXTIC_FAILURE = 1,
  SEXTIC_NO_SOLUTIONS = 2,
  SEXTIC_NON_CONVERGENCE = 3,
  SEXTIC_COLLISION = 4,
  SEXTIC_BAD_INPUT = 64
} sextic_status;

SEXTIC_API const char* sextic_version(void);
SEXTIC_API const char* sextic_status_string(sextic_status status);

/* precision_bits = 0 picks the default (256). */
SEXTIC_API sextic_status sextic_context_create(unsigned precision_bits, sextic_context** out);
SEXTIC_API void sextic_context_destroy(sextic_context* ctx);
SEXTIC_API sextic_status sextic_set_precision(sextic_context* ctx, unsigned precision_bits);
SEXTIC_API unsigned sextic_get_precision(const sextic_context* ctx);
SEXTIC_API const char* sextic_last_error(const sextic_context* ctx);

/* command is one of qes, darboux, locus, stieltjes, dynamics, repro and
   request a JSON object.  A result is returned (and must be freed) whenever
   *out is non-null afterwards, including on failure statuses, so partial
   output such as the last Newton iterate stays available. */
SEXTIC_API sextic_status sextic_run(sextic_context* ctx, const char* command, const char* request_json,
                                    sextic_result** out);

SEXTIC_API sextic_status sextic_result_status(const sextic_result* r);
SEXTIC_API const char* sextic_result_json(const sextic_result* r);
SEXTIC_API const char* sextic_result_csv(const sextic_result* r);
SEXTIC_API const char* sextic_result_message(const sextic_result* r);
SEXTIC_API void sextic_result_destroy(sextic_result* r);

#ifdef __cplusplus
}
#endif

#endif
