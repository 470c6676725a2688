// Copyright 2026 The twosrc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the twosrc library. Every function returning
 * twosrc_status sets a thread-local message readable through
 * twosrc_last_error() when it fails. Strings returned through char** out
 * parameters are owned by the caller and released with twosrc_free_string().
 */

#ifndef TWOSRC_H
#define TWOSRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TWOSRC_API __declspec(dllexport)
#else
#define TWOSRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum twosrc_status {
    TWOSRC_OK = 0,
    TWOSRC_E_INVALID_ARGUMENT = 1,
    TWOSRC_E_CAPACITY = 2,           /* field width above 128 bits */
    TWOSRC_E_UNSUPPORTED_RATE = 3,   /* min-entropy rate at or below 1/2 */
    TWOSRC_E_IO = 4,
    TWOSRC_E_VERIFICATION_FAILED = 5,
    TWOSRC_E_INFEASIBLE = 6,
    TWOSRC_E_DIVERGENT = 7,
    TWOSRC_E_UNCERTIFIABLE = 8,
    TWOSRC_E_TRUNCATED = 9,
    TWOSRC_E_WORKER_FAILURE = 10,
    TWOSRC_E_INTERNAL = 11
} twosrc_status;

TWOSRC_API const char* twosrc_version(void);
TWOSRC_API const char* twosrc_status_name(twosrc_status status);
/* Message of the last failure on this thread; empty after a success. */
TWOSRC_API const char* twosrc_last_error(void);
TWOSRC_API void twosrc_free_string(char* s);

/* ---- plans ---- */

typedef struct twosrc_plan twosrc_plan;

typedef enum twosrc_mode { TWOSRC_MODE_EQ = 0, TWOSRC_MODE_NEQ = 1 } twosrc_mode;

typedef struct twosrc_plan_info {
    twosrc_mode mode;
    unsigned b;
    unsigned n;
    unsigned q;        /* q for eq, q1 for neq */
    unsigned growth;   /* Delta in samples, 0 for eq */
    uint64_t samples;  /* N, eq only */
    uint64_t num_blocks;
    uint64_t output_bits;
    double log2_error; /* eq: total bound; neq: closed-form limit or +inf */
} twosrc_plan_info;

/* delta is "h/b" ("10.74/16"), a fraction or a decimal; epsilon is "2^-30" or a decimal. */
TWOSRC_API twosrc_status twosrc_plan_eq(unsigned b, uint64_t samples, const char* delta, const char* epsilon,
                                        twosrc_plan** out);
TWOSRC_API twosrc_status twosrc_plan_neq(unsigned b, const char* delta, unsigned q1, unsigned growth,
                                         twosrc_plan** out);
/* Parses a plan report as written by twosrc_plan_report. */
TWOSRC_API twosrc_status twosrc_plan_parse(const char* text, twosrc_plan** out);
TWOSRC_API void twosrc_plan_free(twosrc_plan* plan);
TWOSRC_API twosrc_status twosrc_plan_get_info(const twosrc_plan* plan, twosrc_plan_info* out);
TWOSRC_API twosrc_status twosrc_plan_report(const twosrc_plan* plan, char** text);
/* log2 bound on the distance from uniform after `blocks` blocks. */
TWOSRC_API twosrc_status twosrc_plan_error_after(const twosrc_plan* plan, uint64_t blocks, double* log2_error);

/* ---- extraction ---- */

typedef struct twosrc_extractor twosrc_extractor;

/* max_blocks == 0 means no limit beyond the plan (eq plans stop after num_blocks). */
TWOSRC_API twosrc_status twosrc_extractor_new(const twosrc_plan* plan, unsigned workers, uint64_t max_blocks,
                                              twosrc_extractor** out);
TWOSRC_API void twosrc_extractor_free(twosrc_extractor* ex);
TWOSRC_API twosrc_status twosrc_extractor_push_x(twosrc_extractor* ex, const uint8_t* bytes, size_t len);
TWOSRC_API twosrc_status twosrc_extractor_push_y(twosrc_extractor* ex, const uint8_t* bytes, size_t len);
/* Flushes blocks in flight; the trailing partial output byte becomes readable, zero-padded. */
TWOSRC_API twosrc_status twosrc_extractor_finish(twosrc_extractor* ex);
/* Non-zero once the block limit or the 128-bit field cap ended extraction. */
TWOSRC_API int twosrc_extractor_stopped(const twosrc_extractor* ex);
/* Moves up to `cap` completed output bytes into `buf`. */
TWOSRC_API twosrc_status twosrc_extractor_read(twosrc_extractor* ex, uint8_t* buf, size_t cap, size_t* got);
TWOSRC_API twosrc_status twosrc_extractor_report(const twosrc_extractor* ex, double wall_time_seconds,
                                                 char** text);

/* Streams two files through an extractor into out_path and returns the report. */
TWOSRC_API twosrc_status twosrc_extract_files(const twosrc_plan* plan, const char* x_path, const char* y_path,
                                              const char* out_path, unsigned workers, char** report);

/* ---- simulated sources ---- */

typedef struct twosrc_model twosrc_model;

TWOSRC_API twosrc_status twosrc_model_from_json(const char* json, twosrc_model** out);
TWOSRC_API void twosrc_model_free(twosrc_model* model);
TWOSRC_API twosrc_status twosrc_model_generate_file(const twosrc_model* model, uint64_t count, const char* path);
/* Forward-block-source certificate; TWOSRC_E_UNCERTIFIABLE for file models. */
TWOSRC_API twosrc_status twosrc_model_certify(const twosrc_model* model, double* delta, char** detail);
/* Generates to path and returns a report including the certificate or an uncertifiable notice. */
TWOSRC_API twosrc_status twosrc_simulate(const char* json, uint64_t count, const char* path, char** report);

/* ---- verification ---- */

/* Suites: hadamard, bias, distance, xor, bijection, all. Returns
 * TWOSRC_E_VERIFICATION_FAILED (with the report still set) on any violation. */
TWOSRC_API int twosrc_is_suite(const char* name);
TWOSRC_API twosrc_status twosrc_verify_suite(const char* suite, unsigned max_bits, uint64_t seed, char** report,
                                             uint64_t* violations);
TWOSRC_API twosrc_status twosrc_check_hadamard(unsigned q, unsigned n, int* passed);

/* ---- cost model and benchmark ---- */

TWOSRC_API twosrc_status twosrc_default_mul_ops(unsigned q, uint64_t* mul_ops);
TWOSRC_API twosrc_status twosrc_gate_count(unsigned n, unsigned q, uint64_t mul_ops, uint64_t* ops);
/* forced_lanes == 0 derives the lane count from the device size. */
TWOSRC_API twosrc_status twosrc_projected_speed(uint64_t clock_hz, uint64_t lut_count, uint64_t ops_per_lut,
                                                uint64_t block_ops, unsigned q, uint64_t forced_lanes,
                                                uint64_t* lanes, uint64_t* bits_per_second);
/* Cost model plus a measured run of an eq plan. */
TWOSRC_API twosrc_status twosrc_bench(const twosrc_plan* plan, unsigned workers, double seconds, uint64_t mul_ops,
                                      char** report);

#ifdef __cplusplus
}
#endif

#endif /* TWOSRC_H */
