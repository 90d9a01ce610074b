/* C API for the bsurf exact-arithmetic library.
 *
 * All computation runs behind bsurf_run(): pick a command, hand it a JSON
 * scenario document, and read the result handle.  Handles are opaque; free
 * them with the matching _free call.  The library never prints and never
 * exits; every failure is reported through the status code and the error
 * string on the result handle.
 */
#ifndef BSURF_H
#define BSURF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsurf_status {
  BSURF_OK = 0,
  BSURF_SCHEMA_ERROR = 2,       /* malformed scenario document */
  BSURF_PRECONDITION_ERROR = 3, /* violated precondition or cap */
  BSURF_THEOREM_FALSIFIED = 4,  /* a certified identity failed; never on valid input */
  BSURF_INTERNAL_ERROR = 5
} bsurf_status;

typedef struct bsurf_options bsurf_options;
typedef struct bsurf_result bsurf_result;

const char* bsurf_version(void);

/* Comma-separated list of the supported commands. */
const char* bsurf_command_list(void);

bsurf_options* bsurf_options_new(void);
void bsurf_options_free(bsurf_options* opts);
void bsurf_options_set_seed(bsurf_options* opts, uint64_t seed);
void bsurf_options_set_cap(bsurf_options* opts, int64_t cap);
void bsurf_options_set_threads(bsurf_options* opts, int threads);

/* Run one command on a JSON scenario document.  `opts` may be NULL for the
 * defaults.  On return *out is a fresh result handle (also on failure, so
 * the error message can be read); it must be freed by the caller.  Returns
 * the same status that bsurf_result_status() reports. */
bsurf_status bsurf_run(const char* command, const char* scenario_json, const bsurf_options* opts,
                       bsurf_result** out);

bsurf_status bsurf_result_status(const bsurf_result* res);
/* Human-readable report; empty string until a run succeeds. */
const char* bsurf_result_text(const bsurf_result* res);
/* Machine-readable JSON payload; empty string until a run succeeds. */
const char* bsurf_result_json(const bsurf_result* res);
/* Error message, or NULL when the run succeeded. */
const char* bsurf_result_error(const bsurf_result* res);
void bsurf_result_free(bsurf_result* res);

#ifdef __cplusplus
}
#endif

#endif /* BSURF_H */
