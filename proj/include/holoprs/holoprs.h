// Copyright 2026 The holoprs Authors
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

#ifndef HOLOPRS_HOLOPRS_H
#define HOLOPRS_HOLOPRS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HOLOPRS_BUILDING)
#define HPRS_API __declspec(dllexport)
#else
#define HPRS_API __declspec(dllimport)
#endif
#else
#define HPRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 1..15 mirror the library's error kinds. */
typedef enum hprs_status {
    HPRS_OK = 0,
    HPRS_ERR_INVALID_DIMENSION = 1,
    HPRS_ERR_SHAPE = 2,
    HPRS_ERR_RESOURCE_LIMIT = 3,
    HPRS_ERR_INVALID_PARAMETER = 4,
    HPRS_ERR_NO_SCRAMBLING = 5,
    HPRS_ERR_SPARSE_SET = 6,
    HPRS_ERR_LOOKUP = 7,
    HPRS_ERR_BUDGET_VIOLATION = 8,
    HPRS_ERR_SCHEDULE = 9,
    HPRS_ERR_KEY = 10,
    HPRS_ERR_OUT_OF_REGIME = 11,
    HPRS_ERR_DEGENERATE_FIT = 12,
    HPRS_ERR_INCONCLUSIVE = 13,
    HPRS_ERR_VALIDATION = 14,
    HPRS_ERR_IO = 15,
    HPRS_ERR_NULL_ARGUMENT = 100,
    HPRS_ERR_OUT_OF_RANGE = 101,
    HPRS_ERR_INTERNAL = 102
} hprs_status;

typedef struct hprs_config hprs_config;
typedef struct hprs_run hprs_run;

HPRS_API const char *hprs_version(void);
HPRS_API const char *hprs_status_name(int status);
/* Message of the last failed call on this thread; "" if none. */
HPRS_API const char *hprs_last_error(void);
/* Frees strings returned through char** out-parameters. */
HPRS_API void hprs_string_free(char *s);

/* --- experiment registry ------------------------------------------------ */

HPRS_API size_t hprs_experiment_count(void);
/* Borrowed strings, valid for the life of the process. Any out pointer may be NULL. */
HPRS_API int hprs_experiment_info(size_t index, const char **name, const char **description, const char **anchor);

/* --- configuration ------------------------------------------------------ */

HPRS_API int hprs_config_create(hprs_config **out);
HPRS_API void hprs_config_destroy(hprs_config *cfg);
/* Merges key=value lines from a file; later values win. */
HPRS_API int hprs_config_load(hprs_config *cfg, const char *path);
HPRS_API int hprs_config_parse(hprs_config *cfg, const char *text);
/* Applies one "key=value" assignment. */
HPRS_API int hprs_config_set(hprs_config *cfg, const char *assignment);
HPRS_API size_t hprs_config_size(const hprs_config *cfg);
/* *value is borrowed and valid until the config is modified or destroyed. */
HPRS_API int hprs_config_get(const hprs_config *cfg, const char *key, const char **value);

/* --- runs --------------------------------------------------------------- */

/* Runs an experiment and writes its CSV, summary.json and manifest.json into
   out_dir (nothing is written when out_dir is NULL or empty). cfg may be NULL.
   workers = 0 means one. Unknown experiments and bad parameters give
   HPRS_ERR_VALIDATION. */
HPRS_API int hprs_run_experiment(const char *experiment, const hprs_config *cfg, uint64_t seed, const char *out_dir,
                                 unsigned workers, hprs_run **out);
HPRS_API void hprs_run_destroy(hprs_run *run);
HPRS_API const char *hprs_run_summary_line(const hprs_run *run);
HPRS_API const char *hprs_run_summary_json(const hprs_run *run);
HPRS_API const char *hprs_run_manifest_json(const hprs_run *run);
HPRS_API double hprs_run_duration(const hprs_run *run);
/* 1 when every acceptance check passed, 0 otherwise (also for NULL). */
HPRS_API int hprs_run_checks_passed(const hprs_run *run);
HPRS_API size_t hprs_run_check_count(const hprs_run *run);
HPRS_API int hprs_run_check(const hprs_run *run, size_t index, const char **name, int *passed, const char **detail);
HPRS_API size_t hprs_run_output_count(const hprs_run *run);
/* File name and contents of output index (CSV files first, then the JSON files). */
HPRS_API int hprs_run_output(const hprs_run *run, size_t index, const char **name, const char **contents);

/* --- standalone operations ---------------------------------------------- */

/* Pseudo-complexity of a gate sequence in the text format. On success
   *length is the reduced length and, if output is not NULL, *output holds the
   reduced sequence (free with hprs_string_free). */
HPRS_API int hprs_pseudo_complexity(const char *sequence_text, double epsilon, size_t *length, char **output);

/* Exact Weingarten value Wg(cycle type, d) as "p/q" (free with hprs_string_free). */
HPRS_API int hprs_weingarten(const int *cycle_lengths, size_t count, int64_t d, char **value);

#ifdef __cplusplus
}
#endif

#endif
