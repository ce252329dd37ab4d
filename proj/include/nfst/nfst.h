// Copyright 2026 The nfst-overlay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to libnfst. All objects are opaque handles owned by the caller
 * and released with the matching *_free function. Functions returning
 * nfst_status leave a thread-local message for nfst_last_error() on failure.
 * Strings and buffers handed out by the library are released with
 * nfst_string_free / nfst_buffer_free. */

#ifndef NFST_NFST_H_
#define NFST_NFST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NFST_API __declspec(dllexport)
#else
#define NFST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as `nfst` CLI exit codes. */
typedef enum nfst_status {
  NFST_OK = 0,
  NFST_E_USAGE = 1,
  NFST_E_IO = 2,
  NFST_E_PARSE = 3,
  NFST_E_INVALID_FST = 4,
  NFST_E_NOT_LENGTH_PRESERVING = 5,
  NFST_E_EPSILON_PRESENT = 6,
  NFST_E_CAPACITY_EXCEEDED = 7,
  NFST_E_ADJACENCY_UNSATISFIABLE = 8,
  NFST_E_VERSION_MISMATCH = 9,
  NFST_E_CHECKSUM_MISMATCH = 10,
  NFST_E_TRUNCATED_INPUT = 11,
  NFST_E_MALFORMED_IMAGE = 12,
  NFST_E_ACTIVATION_OVERFLOW = 13,
  NFST_E_FIFO_OVERFLOW = 14,
  NFST_E_NO_ACCEPTING_PATH = 15,
  NFST_E_UNUSED_TRAM_ENTRY = 16,
  NFST_E_UNSUPPORTED_EPSILON_OUTPUT = 17,
  NFST_E_VERIFY_FAILED = 18,
  NFST_E_INTERNAL = 19
} nfst_status;

typedef enum nfst_neighborhood {
  NFST_MOORE8 = 0,
  NFST_VONNEUMANN4 = 1
} nfst_neighborhood;

typedef enum nfst_policy {
  NFST_POLICY_ALL = 0,
  NFST_POLICY_FIRST = 1
} nfst_policy;

typedef struct nfst_fst nfst_fst;
typedef struct nfst_diagnostics nfst_diagnostics;
typedef struct nfst_image nfst_image;
typedef struct nfst_run_report nfst_run_report;
typedef struct nfst_verify_report nfst_verify_report;

NFST_API const char* nfst_last_error(void);
NFST_API const char* nfst_status_name(nfst_status status);
NFST_API void nfst_string_free(char* s);
NFST_API void nfst_buffer_free(uint8_t* buf);

/* Machines */
NFST_API nfst_status nfst_fst_parse(const char* text, size_t len, nfst_fst** out);
NFST_API nfst_status nfst_fst_load(const char* path, nfst_fst** out);
NFST_API void nfst_fst_free(nfst_fst* fst);
NFST_API size_t nfst_fst_state_count(const nfst_fst* fst);
NFST_API size_t nfst_fst_transition_count(const nfst_fst* fst);
NFST_API int nfst_fst_is_length_preserving(const nfst_fst* fst);
NFST_API nfst_status nfst_fst_eliminate_epsilon(const nfst_fst* fst, nfst_fst** out);
NFST_API nfst_status nfst_fst_to_text(const nfst_fst* fst, char** out);

/* Diagnostics; severity is 0 for warnings and 1 for errors. */
NFST_API nfst_status nfst_fst_validate(const nfst_fst* fst, nfst_diagnostics** out);
NFST_API void nfst_diagnostics_free(nfst_diagnostics* d);
NFST_API size_t nfst_diagnostics_count(const nfst_diagnostics* d);
NFST_API int nfst_diagnostics_severity(const nfst_diagnostics* d, size_t i);
NFST_API const char* nfst_diagnostics_message(const nfst_diagnostics* d, size_t i);
NFST_API int nfst_diagnostics_has_errors(const nfst_diagnostics* d);

/* Overlay images */
NFST_API nfst_status nfst_compile(const nfst_fst* fst, uint16_t rows, uint16_t cols,
                                  nfst_neighborhood neighborhood, nfst_image** out);
NFST_API void nfst_image_free(nfst_image* image);
NFST_API size_t nfst_image_pe_count(const nfst_image* image);
NFST_API size_t nfst_image_occupied(const nfst_image* image);
/* Zero for images loaded from bytes (replication is compile-side metadata). */
NFST_API size_t nfst_image_replications(const nfst_image* image);
NFST_API nfst_status nfst_image_save(const nfst_image* image, uint8_t** buf, size_t* len);
NFST_API nfst_status nfst_image_load(const uint8_t* buf, size_t len, nfst_image** out);
NFST_API nfst_status nfst_image_save_file(const nfst_image* image, const char* path);
NFST_API nfst_status nfst_image_load_file(const char* path, nfst_image** out);
NFST_API nfst_status nfst_image_to_json(const nfst_image* image, char** out);

/* Streaming runs. threads == 0 uses the hardware concurrency. */
NFST_API nfst_status nfst_run(const nfst_image* image, const uint8_t* input, size_t len,
                              size_t n, nfst_policy policy, unsigned threads,
                              nfst_run_report** out);
/* One trace line per transition step, sequential. */
NFST_API nfst_status nfst_trace(const nfst_image* image, const uint8_t* input, size_t len,
                                size_t n, char** out);
NFST_API void nfst_run_report_free(nfst_run_report* r);
NFST_API size_t nfst_run_report_window_count(const nfst_run_report* r);
NFST_API uint64_t nfst_run_report_total_cycles(const nfst_run_report* r);
NFST_API size_t nfst_run_report_pe_count(const nfst_run_report* r);
NFST_API size_t nfst_run_report_window_length(const nfst_run_report* r);
NFST_API int nfst_run_report_matched(const nfst_run_report* r, size_t window);
NFST_API uint64_t nfst_run_report_cycles(const nfst_run_report* r, size_t window);
NFST_API size_t nfst_run_report_output_count(const nfst_run_report* r, size_t window);
/* The returned pointer stays valid until the report is freed. */
NFST_API const uint8_t* nfst_run_report_output(const nfst_run_report* r, size_t window,
                                               size_t k, size_t* len);

/* Overlay-vs-oracle equivalence. fst == NULL draws random machines per case;
 * image, if given, is checked against fst instead of compiling it. */
typedef struct nfst_verify_options {
  uint64_t seed;
  size_t cases;
  uint16_t rows;
  uint16_t cols;
  nfst_neighborhood neighborhood;
  unsigned threads;
} nfst_verify_options;

NFST_API nfst_status nfst_verify(const nfst_fst* fst, const nfst_image* image,
                                 const nfst_verify_options* options,
                                 nfst_verify_report** out);
NFST_API void nfst_verify_report_free(nfst_verify_report* r);
NFST_API size_t nfst_verify_report_cases(const nfst_verify_report* r);
NFST_API size_t nfst_verify_report_passed(const nfst_verify_report* r);
NFST_API size_t nfst_verify_report_failed(const nfst_verify_report* r);
NFST_API size_t nfst_verify_report_skipped(const nfst_verify_report* r);
/* Summary line plus the first counterexample, if any. */
NFST_API const char* nfst_verify_report_text(const nfst_verify_report* r);

/* Resource model */
typedef struct nfst_resource_report {
  uint64_t m;
  uint64_t occupied;
  uint64_t match_ram_bits;
  uint64_t tram_bits;
  uint64_t vector_bits;
  uint64_t fifo_bits;
  uint64_t total_bits;
} nfst_resource_report;

NFST_API nfst_status nfst_estimate(const nfst_image* image, uint64_t fifo_capacity,
                                   nfst_resource_report* out);
NFST_API nfst_status nfst_sweep_csv(const uint16_t* rows, const uint16_t* cols, size_t count,
                                    uint64_t fifo_capacity, char** out);

#ifdef __cplusplus
}
#endif

#endif  // NFST_NFST_H_
